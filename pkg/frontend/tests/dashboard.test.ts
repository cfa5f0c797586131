import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { mountDashboard } from "../src/views/dashboard.js";
import {
  Backend,
  assertNoAnswerKey,
  placeViaApi,
  recordingClient,
  seedQuestions,
  startBackend,
  waitFor,
} from "./helpers.js";

let backend: Backend;
let setup: ApiClient;
const received: string[] = [];

beforeAll(async () => {
  backend = await startBackend();
  setup = recordingClient(backend.baseUrl, received);
});

afterAll(async () => {
  assertNoAnswerKey(received);
  await backend.stop();
});

function mount() {
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById("root") as HTMLElement;
  mountDashboard(root, recordingClient(backend.baseUrl, received));
  return root;
}

function counts(root: HTMLElement, prefix: string): number[] {
  return Array.from(root.querySelectorAll<HTMLElement>(`[data-testid^="${prefix}"]`)).map((node) =>
    Number(node.dataset.count),
  );
}

describe("analytics dashboard", () => {
  it("renders an explicit no-data view for an empty cohort", async () => {
    const root = mount();
    await waitFor(() => root.querySelector('[data-testid="no-data"]'), "no-data view");
  });

  it("charts totals that match the analytics endpoint", async () => {
    const key = await seedQuestions(setup);
    await placeViaApi(setup, key, "dash-1", 9, { medium_of_instruction: "english" }, { gender: "male" });
    await placeViaApi(setup, key, "dash-2", 6, { medium_of_instruction: "english" }, { gender: "female" });
    await placeViaApi(setup, key, "dash-3", 5, { medium_of_instruction: "local_language" }, { gender: "female" });
    await placeViaApi(setup, key, "dash-4", 2, { medium_of_instruction: "local_language" }, { gender: "other" });

    const root = mount();
    const size = await waitFor(
      () => root.querySelector<HTMLElement>('[data-testid="cohort-size"]'),
      "cohort size",
    );
    expect(size.textContent).toContain("4");

    const stats = await setup.cohortStats("medium_of_instruction");
    expect(stats.cohort_size).toBe(4);

    const genderCounts = counts(root, "gender-");
    expect(genderCounts.reduce((a, b) => a + b, 0)).toBe(stats.cohort_size);
    expect(Number(root.querySelector<HTMLElement>('[data-testid="gender-male"]')!.dataset.count)).toBe(
      stats.gender_distribution.male.count,
    );

    const levelCounts = counts(root, "level-");
    expect(levelCounts.reduce((a, b) => a + b, 0)).toBe(stats.cohort_size);
    for (const [level, cell] of Object.entries(stats.level_distribution)) {
      expect(
        Number(root.querySelector<HTMLElement>(`[data-testid="level-${level}"]`)!.dataset.count),
      ).toBe(cell.count);
    }

    // cross-tab cells mirror the endpoint and their marginals match level counts
    for (const [value, levels] of Object.entries(stats.cross_tab.cells)) {
      for (const [level, count] of Object.entries(levels)) {
        expect(
          Number(
            root.querySelector<HTMLElement>(`[data-testid="cross-${value}-${level}"]`)!.dataset.count,
          ),
        ).toBe(count);
      }
    }
    for (const [level, cell] of Object.entries(stats.level_distribution)) {
      const marginal = Object.values(stats.cross_tab.cells).reduce(
        (sum, levels) => sum + levels[level],
        0,
      );
      expect(marginal).toBe(cell.count);
    }
  });

  it("re-queries when the dimension changes", async () => {
    const root = mount();
    await waitFor(() => root.querySelector('[data-testid="chart-cross-tab"]'), "initial cross-tab");
    expect(
      root.querySelector<HTMLElement>('[data-testid="chart-cross-tab"]')!.dataset.dimension,
    ).toBe("medium_of_instruction");
    const select = root.querySelector<HTMLSelectElement>('[data-testid="dimension-select"]')!;
    select.value = "course_contents";
    select.dispatchEvent(new Event("change"));
    await waitFor(
      () =>
        root.querySelector<HTMLElement>('[data-testid="chart-cross-tab"]')?.dataset.dimension ===
        "course_contents",
      "course_contents cross-tab",
    );
    expect(root.querySelector('[data-testid="cross-international-skilled"]')).toBeTruthy();
  });
});
