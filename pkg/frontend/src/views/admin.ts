/**
 * Question bank administration: list/filter, create, edit, delete, approve.
 *
 * The answer key is write-only on the wire: listings never include it, so
 * editing a question means re-entering which option is correct. A counter
 * row warns when a section has fewer than 10 approved questions (the
 * minimum a test session needs).
 */

import { ApiClient, ApiError, QuestionView } from "../api.js";
import { clear, el, errorLine, labeled, option, pretty } from "../dom.js";

const SECTIONS = ["english", "mathematical_reasoning", "computer", "intelligence_quotient"];
const MIN_APPROVED = 10;

export function mountAdmin(root: HTMLElement, client: ApiClient): void {
  clear(root);

  const banner = el(
    "p",
    { class: "banner", "data-testid": "admin-banner" },
    "Prototype admin panel: unauthenticated, matches the service's open scope.",
  );
  const counts = el("div", { class: "counts", "data-testid": "approved-counts" });
  const sectionFilter = el("select", { "data-testid": "filter-section" });
  sectionFilter.append(option("", "all sections"));
  SECTIONS.forEach((section) => sectionFilter.append(option(section, pretty(section))));
  const statusFilter = el("select", { "data-testid": "filter-status" });
  ["", "draft", "approved"].forEach((status) =>
    statusFilter.append(option(status, status === "" ? "any status" : status)),
  );
  const tableBody = el("tbody", { "data-testid": "question-rows" });
  const table = el(
    "table",
    { class: "questions" },
    el(
      "thead",
      {},
      el("tr", {}, el("th", {}, "Section"), el("th", {}, "Prompt"), el("th", {}, "Status"), el("th", {}, "Actions")),
    ),
    tableBody,
  );
  const listError = errorLine("admin-error");

  // create / edit form
  const formTitle = el("h3", { "data-testid": "form-title" }, "Add question");
  const sectionInput = el("select", {});
  SECTIONS.forEach((section) => sectionInput.append(option(section, pretty(section))));
  const promptInput = el("input", { type: "text" });
  const optionInputs = [0, 1, 2, 3].map(() => el("input", { type: "text" }));
  const correctInput = el("select", {});
  correctInput.append(option("", "choose correct option..."));
  ["A", "B", "C", "D"].forEach((letter, index) => correctInput.append(option(String(index), `Option ${letter}`)));
  const saveButton = el("button", { "data-testid": "question-save" }, "Save question");
  const cancelEdit = el("button", { "data-testid": "question-cancel", hidden: "" }, "Cancel edit");
  const formError = errorLine("form-error");
  let editingId: string | null = null;

  const form = el(
    "section",
    { class: "question-form" },
    formTitle,
    labeled("Section", sectionInput, "question-section"),
    labeled("Prompt", promptInput, "question-prompt"),
    labeled("Option A", optionInputs[0], "question-option-0"),
    labeled("Option B", optionInputs[1], "question-option-1"),
    labeled("Option C", optionInputs[2], "question-option-2"),
    labeled("Option D", optionInputs[3], "question-option-3"),
    labeled("Correct option (write-only, never shown again)", correctInput, "question-correct"),
    saveButton,
    cancelEdit,
    formError,
  );

  root.append(
    banner,
    el("h2", {}, "Question bank"),
    counts,
    el("div", { class: "filters" }, sectionFilter, statusFilter),
    listError,
    table,
    form,
  );

  sectionFilter.addEventListener("change", () => void refresh());
  statusFilter.addEventListener("change", () => void refresh());

  function resetForm(): void {
    editingId = null;
    formTitle.textContent = "Add question";
    promptInput.value = "";
    optionInputs.forEach((input) => (input.value = ""));
    correctInput.value = "";
    cancelEdit.hidden = true;
    formError.textContent = "";
  }

  cancelEdit.addEventListener("click", resetForm);

  saveButton.addEventListener("click", async () => {
    if (correctInput.value === "") {
      formError.textContent = "pick which option is correct";
      return;
    }
    const payload = {
      section: sectionInput.value,
      prompt: promptInput.value,
      options: optionInputs.map((input) => input.value),
      correct_option: Number(correctInput.value),
    };
    try {
      if (editingId) {
        await client.updateQuestion(editingId, payload);
      } else {
        await client.createQuestion(payload);
      }
      resetForm();
      await refresh();
    } catch (err) {
      formError.textContent =
        err instanceof ApiError && err.field ? `${err.field}: ${err.message}` : String(err);
    }
  });

  function renderCounts(all: QuestionView[]): void {
    clear(counts);
    for (const section of SECTIONS) {
      const approved = all.filter((q) => q.section === section && q.status === "approved").length;
      const cell = el(
        "span",
        {
          class: approved < MIN_APPROVED ? "count warning" : "count",
          "data-testid": `count-${section}`,
          "data-approved": String(approved),
        },
        `${pretty(section)}: ${approved} approved`,
      );
      if (approved < MIN_APPROVED) {
        cell.append(el("strong", {}, ` (needs ${MIN_APPROVED - approved} more to serve tests)`));
      }
      counts.append(cell);
    }
  }

  function row(question: QuestionView): HTMLTableRowElement {
    const approveButton = el("button", { "data-testid": `approve-${question.question_id}` }, "Approve");
    const editButton = el("button", { "data-testid": `edit-${question.question_id}` }, "Edit");
    const deleteButton = el("button", { "data-testid": `delete-${question.question_id}` }, "Delete");
    const rowError = el("span", { class: "error", "data-testid": `row-error-${question.question_id}` });
    if (question.status === "approved") {
      approveButton.disabled = true;
    }
    approveButton.addEventListener("click", async () => {
      try {
        await client.approveQuestion(question.question_id);
        await refresh();
      } catch (err) {
        rowError.textContent = err instanceof ApiError ? err.message : String(err);
      }
    });
    editButton.addEventListener("click", () => {
      editingId = question.question_id;
      formTitle.textContent = `Edit question ${question.question_id} (goes back to draft)`;
      sectionInput.value = question.section;
      promptInput.value = question.prompt;
      question.options.forEach((text, index) => (optionInputs[index].value = text));
      correctInput.value = "";
      cancelEdit.hidden = false;
    });
    deleteButton.addEventListener("click", async () => {
      try {
        await client.deleteQuestion(question.question_id);
        await refresh();
      } catch (err) {
        rowError.textContent = err instanceof ApiError ? err.message : String(err);
      }
    });
    return el(
      "tr",
      { "data-testid": `question-row-${question.question_id}`, "data-status": question.status },
      el("td", {}, pretty(question.section)),
      el("td", {}, question.prompt),
      el("td", { class: `status-${question.status}` }, question.status),
      el("td", {}, approveButton, editButton, deleteButton, rowError),
    );
  }

  async function refresh(): Promise<void> {
    try {
      const everything = await client.listQuestions();
      renderCounts(everything.questions);
      const filters: { section?: string; status?: string } = {};
      if (sectionFilter.value) filters.section = sectionFilter.value;
      if (statusFilter.value) filters.status = statusFilter.value;
      const listed =
        filters.section || filters.status ? (await client.listQuestions(filters)).questions : everything.questions;
      clear(tableBody);
      listed.forEach((question) => tableBody.append(row(question)));
      listError.textContent = "";
    } catch (err) {
      listError.textContent = err instanceof ApiError ? err.message : "could not reach the server";
    }
  }

  void refresh();
}
