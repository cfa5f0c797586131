/**
 * Cohort analytics dashboard: gender split, level distribution, and the
 * level-by-dimension cross-tab, rendered as plain bar rows straight from
 * the analytics endpoint. Empty cohorts get an explicit no-data view.
 */

import { ApiClient, ApiError, CohortStats } from "../api.js";
import { clear, el, option, pretty } from "../dom.js";

const DIMENSIONS = ["medium_of_instruction", "course_contents", "computer_knowledge"];

function barRow(label: string, count: number, total: number, testId: string): HTMLElement {
  const widthPct = total > 0 ? (count / total) * 100 : 0;
  const bar = el("div", { class: "bar" });
  bar.style.width = `${widthPct}%`;
  return el(
    "div",
    { class: "bar-row", "data-testid": testId, "data-count": String(count) },
    el("span", { class: "bar-label" }, `${label}: ${count}`),
    bar,
  );
}

export function mountDashboard(root: HTMLElement, client: ApiClient): void {
  clear(root);
  const dimensionSelect = el("select", { "data-testid": "dimension-select" });
  DIMENSIONS.forEach((dimension) => dimensionSelect.append(option(dimension, pretty(dimension))));
  const refreshButton = el("button", { "data-testid": "dashboard-refresh" }, "Refresh");
  const body = el("div", { "data-testid": "dashboard-body" });
  root.append(
    el("h2", {}, "Cohort analytics"),
    el("div", { class: "filters" }, el("label", {}, "Cross-tab dimension "), dimensionSelect, refreshButton),
    body,
  );

  function renderStats(stats: CohortStats): void {
    clear(body);
    if (stats.cohort_size === 0) {
      body.append(
        el("p", { "data-testid": "no-data" }, "No placed students yet: nothing to chart."),
      );
      return;
    }
    body.append(el("p", { "data-testid": "cohort-size" }, `Placed students: ${stats.cohort_size}`));

    const genderChart = el("section", { "data-testid": "chart-gender" }, el("h3", {}, "Gender split"));
    for (const [gender, cell] of Object.entries(stats.gender_distribution)) {
      genderChart.append(
        barRow(
          `${pretty(gender)} (${cell.percentage.toFixed(1)}%)`,
          cell.count,
          stats.cohort_size,
          `gender-${gender}`,
        ),
      );
    }

    const levelChart = el("section", { "data-testid": "chart-levels" }, el("h3", {}, "Level distribution"));
    for (const [level, cell] of Object.entries(stats.level_distribution)) {
      levelChart.append(
        barRow(
          `${pretty(level)} (${cell.percentage.toFixed(1)}%)`,
          cell.count,
          stats.cohort_size,
          `level-${level}`,
        ),
      );
    }

    const crossChart = el(
      "section",
      { "data-testid": "chart-cross-tab", "data-dimension": stats.cross_tab.dimension },
      el("h3", {}, `Levels by ${pretty(stats.cross_tab.dimension)}`),
    );
    for (const [value, levels] of Object.entries(stats.cross_tab.cells)) {
      const group = el("div", { class: "cross-group" }, el("h4", {}, pretty(value)));
      for (const [level, count] of Object.entries(levels)) {
        group.append(barRow(pretty(level), count, stats.cohort_size, `cross-${value}-${level}`));
      }
      crossChart.append(group);
    }

    body.append(genderChart, levelChart, crossChart);
  }

  async function refresh(): Promise<void> {
    try {
      renderStats(await client.cohortStats(dimensionSelect.value));
    } catch (err) {
      clear(body);
      body.append(
        el(
          "p",
          { class: "error", "data-testid": "dashboard-error" },
          err instanceof ApiError ? err.message : "could not reach the server",
        ),
      );
    }
  }

  dimensionSelect.addEventListener("change", () => void refresh());
  refreshButton.addEventListener("click", () => void refresh());
  void refresh();
}
