/**
 * Figure assembly over the committed CSVs: charger spectral statistics
 * (norm + variance panels), power-bound scaling with fitted guide lines,
 * KL flatness against system size, scenario time series, and the weighted
 * eigenvalue histogram. Pure functions from parsed tables to SVG text.
 */

import { numbers, requireColumns, requireSchema, Table } from "./csv.js";
import { PowerLawFit } from "./fit.js";
import { histogramPanel, scalingLoglogPanel, Series, timeseriesPanel } from "./panels.js";
import { Svg } from "./svg.js";

const FORM_COLORS: Record<string, string> = {
  at_kicks: "#c44e52",
  between_kicks: "#4c72b0",
};

function formSeries(table: Table, column: string): Series[] {
  requireColumns(table, ["N", "form", column]);
  const byForm = new Map<string, Array<[number, number]>>();
  for (const row of table.rows) {
    const form = String(row.form);
    if (!byForm.has(form)) byForm.set(form, []);
    byForm.get(form)!.push([Number(row.N), Number(row[column])]);
  }
  return [...byForm.entries()].map(([form, points]) => ({
    label: form.replace("_", " "),
    color: FORM_COLORS[form] ?? "#555",
    points: points.sort((a, b) => a[0] - b[0]),
  }));
}

export function renderSpectra(spectra: Table): string {
  requireSchema(spectra, "spectra");
  const svg = new Svg(860, 400);
  scalingLoglogPanel(svg, { x: 70, y: 50, width: 320, height: 280 }, formSeries(spectra, "max_abs"), {
    xLabel: "N",
    yLabel: "operator norm",
    title: "static charger norm",
    referenceSlopeOne: true,
  });
  scalingLoglogPanel(svg, { x: 500, y: 50, width: 320, height: 280 }, formSeries(spectra, "variance"), {
    xLabel: "N",
    yLabel: "eigenvalue variance",
    title: "static charger variance",
    referenceSlopeOne: true,
  });
  return svg.render();
}

export interface ScalingRender {
  svg: string;
  fit: PowerLawFit;
}

export function renderScaling(sweep: Table): ScalingRender {
  requireSchema(sweep, "sweep");
  requireColumns(sweep, ["N", "bound", "var_hb", "var_hc"]);
  const ns = numbers(sweep, "N");
  const svg = new Svg(860, 400);
  const zip = (column: string): Array<[number, number]> =>
    numbers(sweep, column).map((y, i) => [ns[i], y]);
  const fit = scalingLoglogPanel(
    svg,
    { x: 70, y: 50, width: 320, height: 280 },
    [{ label: "time-avg 2 dHB dHC", color: "#c44e52", points: zip("bound") }],
    {
      xLabel: "N",
      yLabel: "power bound",
      title: "uncertainty-bound scaling",
      fitSeries: "time-avg 2 dHB dHC",
      referenceSlopeOne: true,
    },
  );
  scalingLoglogPanel(
    svg,
    { x: 500, y: 50, width: 320, height: 280 },
    [
      { label: "Var(H_B)", color: "#4c72b0", points: zip("var_hb") },
      { label: "Var(H_C)", color: "#55a868", points: zip("var_hc") },
    ],
    { xLabel: "N", yLabel: "time-averaged variance", title: "battery and charger variances" },
  );
  if (!fit) throw new Error("bound fit overlay missing");
  return { svg: svg.render(), fit };
}

export interface ActivityRender {
  svg: string;
  fit: PowerLawFit;
}

export function renderActivity(sweep: Table): ActivityRender {
  requireSchema(sweep, "sweep");
  requireColumns(sweep, ["N", "kl_bits"]);
  const ns = numbers(sweep, "N");
  const kl = numbers(sweep, "kl_bits");
  const svg = new Svg(520, 400);
  const fit = scalingLoglogPanel(
    svg,
    { x: 70, y: 50, width: 380, height: 280 },
    [{ label: "time-avg step KL (bits)", color: "#4c72b0", points: ns.map((n, i) => [n, kl[i]]) }],
    {
      xLabel: "N",
      yLabel: "KL divergence (bits)",
      title: "energy-space activity stays flat",
      fitSeries: "time-avg step KL (bits)",
    },
  );
  if (!fit) throw new Error("KL fit overlay missing");
  svg.text(260, 370, `log-log slope ${fit.exponent.toFixed(4)}: no growth with N`, 11, "middle", "#555");
  return { svg: svg.render(), fit };
}

export function renderScenario(scenario: Table): string {
  requireSchema(scenario, "scenario");
  requireColumns(scenario, ["t", "power", "i_e_analytic", "energy", "grouping"]);
  const groupings = [...new Set(scenario.rows.map((row) => String(row.grouping)))];
  const svg = new Svg(860, 400);
  const palette = ["#c44e52", "#4c72b0", "#55a868", "#8172b2"];
  const seriesFor = (rows: typeof scenario.rows, suffix: string, offset: number): Series[] => [
    { label: `P(t)${suffix}`, color: palette[offset % palette.length], points: rows.map((r) => [Number(r.t), Number(r.power)]) },
    { label: `I_E(t)${suffix}`, color: palette[(offset + 1) % palette.length], points: rows.map((r) => [Number(r.t), Number(r.i_e_analytic)]) },
  ];
  if (groupings.length === 1) {
    timeseriesPanel(svg, { x: 70, y: 50, width: 320, height: 280 }, seriesFor(scenario.rows, "", 0), {
      xLabel: "t",
      yLabel: "power / activity",
      title: "activity is sign-blind",
    });
    const energySeries: Series[] = [
      { label: "E(t)", color: "#55a868", points: scenario.rows.map((r) => [Number(r.t), Number(r.energy)]) },
      { label: "I_E discrete", color: "#8172b2", points: scenario.rows.map((r) => [Number(r.t), Number(r.i_e_discrete)]) },
    ];
    timeseriesPanel(svg, { x: 500, y: 50, width: 320, height: 280 }, energySeries, {
      xLabel: "t",
      yLabel: "energy / activity",
      title: "stored energy and step estimate",
    });
  } else {
    groupings.forEach((grouping, i) => {
      const rows = scenario.rows.filter((row) => row.grouping === grouping);
      timeseriesPanel(
        svg,
        { x: 70 + i * 430, y: 50, width: 320, height: 280 },
        seriesFor(rows, "", i * 2),
        { xLabel: "t", yLabel: "power / activity", title: grouping.replace(/_/g, " ") },
      );
    });
  }
  return svg.render();
}

export function renderHistogram(hist: Table): string {
  requireSchema(hist, "spectra_hist");
  requireColumns(hist, ["eigenvalue", "weight", "N", "form"]);
  const values = numbers(hist, "eigenvalue");
  const weights = numbers(hist, "weight");
  const n = hist.rows[0].N;
  const form = String(hist.rows[0].form).replace("_", " ");
  const svg = new Svg(520, 400);
  histogramPanel(svg, { x: 70, y: 50, width: 380, height: 280 }, values, weights, {
    xLabel: "eigenvalue",
    yLabel: "product-state multiplicity",
    title: `charger spectrum, N=${n}, ${form}`,
  });
  return svg.render();
}
