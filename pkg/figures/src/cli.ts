/**
 * Figure CLI: render one figure from a CSV, or everything under --data.
 *
 *   node dist/cli.js spectra   --in ../data/spectra.csv      --out fig2-spectra.svg
 *   node dist/cli.js scaling   --in ../data/sweep.csv        --out fig3-scaling.svg
 *   node dist/cli.js activity  --in ../data/sweep.csv        --out fig4-activity.svg
 *   node dist/cli.js scenario  --in ../data/rabi.csv         --out scenario-rabi.svg
 *   node dist/cli.js histogram --in ../data/spectra_hist.csv --out spectrum-hist.svg
 *   node dist/cli.js render-all --data ../data --out out
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { readTable } from "./csv.js";
import { renderActivity, renderHistogram, renderScaling, renderScenario, renderSpectra } from "./figures.js";

function argValue(argv: string[], flag: string): string | undefined {
  const index = argv.indexOf(flag);
  return index >= 0 && index + 1 < argv.length ? argv[index + 1] : undefined;
}

function renderOne(command: string, input: string): string {
  switch (command) {
    case "spectra":
      return renderSpectra(readTable(input));
    case "scaling":
      return renderScaling(readTable(input)).svg;
    case "activity":
      return renderActivity(readTable(input)).svg;
    case "scenario":
      return renderScenario(readTable(input));
    case "histogram":
      return renderHistogram(readTable(input));
    default:
      throw new Error(`unknown figure '${command}'`);
  }
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (!command) {
    console.error("usage: cli.js <spectra|scaling|activity|scenario|histogram|render-all> --in <csv> --out <svg>");
    return 2;
  }
  try {
    if (command === "render-all") {
      const dataDir = argValue(rest, "--data") ?? "../data";
      const outDir = argValue(rest, "--out") ?? "out";
      mkdirSync(outDir, { recursive: true });
      const jobs: Array<[string, string, string]> = [
        ["spectra", join(dataDir, "spectra.csv"), "fig2-spectra.svg"],
        ["scaling", join(dataDir, "sweep.csv"), "fig3-scaling.svg"],
        ["activity", join(dataDir, "sweep.csv"), "fig4-activity.svg"],
        ["scenario", join(dataDir, "rabi.csv"), "scenario-rabi.svg"],
        ["scenario", join(dataDir, "degenerate.csv"), "scenario-degenerate.svg"],
        ["histogram", join(dataDir, "spectra_hist.csv"), "spectrum-hist.svg"],
      ];
      for (const [kind, input, name] of jobs) {
        const target = join(outDir, name);
        writeFileSync(target, renderOne(kind, input));
        console.log(`wrote ${target}`);
      }
      return 0;
    }
    const input = argValue(rest, "--in");
    const output = argValue(rest, "--out");
    if (!input || !output) {
      console.error(`usage: cli.js ${command} --in <csv> --out <svg>`);
      return 2;
    }
    writeFileSync(output, renderOne(command, input));
    console.log(`wrote ${output}`);
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
