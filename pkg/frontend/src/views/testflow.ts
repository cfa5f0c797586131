/**
 * Section-by-section aptitude test flow.
 *
 * The server is the source of truth for sequencing: each screen renders
 * whatever GET current-section returns, so a reloaded page resumes exactly
 * where the session stands (the open session id is kept in localStorage).
 * After the last section it shows the score, the assigned level and, for
 * eligible students, the LMS track returned by enrollment.
 */

import { ApiClient, ApiError } from "../api.js";
import { clear, el, errorLine, pretty } from "../dom.js";

const SESSION_KEY = "learnplace.session";
const STUDENT_KEY = "learnplace.student";

export function mountTestFlow(root: HTMLElement, client: ApiClient): void {
  clear(root);
  const container = el("div", { class: "testflow" });
  root.append(container);

  const stored = localStorage.getItem(SESSION_KEY);
  if (stored) {
    void showSection(stored);
  } else {
    showStart();
  }

  function showStart(message = ""): void {
    clear(container);
    const studentInput = el("input", { type: "text", "data-testid": "test-student-id" });
    studentInput.value = localStorage.getItem(STUDENT_KEY) ?? "";
    const startButton = el("button", { "data-testid": "test-start" }, "Start aptitude test");
    const error = errorLine("test-error");
    error.textContent = message;
    container.append(
      el("h2", {}, "Aptitude test"),
      el("p", {}, "Four sections in fixed order; 10 questions each, one point per question."),
      el("div", { class: "field" }, el("label", {}, "Student id"), studentInput),
      startButton,
      error,
    );
    startButton.addEventListener("click", async () => {
      const studentId = studentInput.value.trim();
      if (!studentId) {
        error.textContent = "please enter your student id";
        return;
      }
      try {
        const session = await client.startTest(studentId);
        localStorage.setItem(SESSION_KEY, session.session_id);
        localStorage.setItem(STUDENT_KEY, studentId);
        await showSection(session.session_id);
      } catch (err) {
        error.textContent = err instanceof ApiError ? err.message : "network problem, please try again";
      }
    });
  }

  async function showSection(sessionId: string): Promise<void> {
    let view;
    try {
      view = await client.currentSection(sessionId);
    } catch (err) {
      localStorage.removeItem(SESSION_KEY);
      showStart(err instanceof ApiError ? err.message : "could not reach the server");
      return;
    }
    if (view.state !== "in_progress" || view.current_section === null) {
      await showResult(sessionId);
      return;
    }
    clear(container);
    const error = errorLine("test-error");
    const done = view.progress.sections_completed;
    const total = view.progress.sections_total;
    const heading = el(
      "h2",
      { "data-testid": "section-heading", "data-section": view.current_section },
      `Section ${done + 1} of ${total}: ${pretty(view.current_section)}`,
    );
    const list = el("ol", { class: "questions" });
    view.questions.forEach((question, index) => {
      const item = el(
        "li",
        { "data-testid": `question-${index}`, "data-question-id": question.question_id },
        el("p", {}, question.prompt),
      );
      question.options.forEach((text, optionIndex) => {
        const radio = el("input", {
          type: "radio",
          name: `q${index}`,
          value: String(optionIndex),
          "data-testid": `q${index}-opt${optionIndex}`,
        });
        item.append(el("label", { class: "option" }, radio, text));
      });
      list.append(item);
    });
    const submitButton = el("button", { "data-testid": "section-submit" }, "Submit section");
    container.append(heading, list, submitButton, error);

    const section = view.current_section;
    submitButton.addEventListener("click", async () => {
      const answers: number[] = [];
      for (let index = 0; index < view.questions.length; index += 1) {
        const checked = container.querySelector<HTMLInputElement>(`input[name="q${index}"]:checked`);
        if (!checked) {
          error.textContent = `please answer question ${index + 1}`;
          return;
        }
        answers.push(Number(checked.value));
      }
      submitButton.disabled = true;
      try {
        await client.submitAnswers(sessionId, section, answers);
        await showSection(sessionId);
      } catch (err) {
        if (err instanceof ApiError && err.code === "AlreadyAnswered") {
          // a retried submission that actually landed; just move on
          await showSection(sessionId);
        } else if (err instanceof ApiError) {
          error.textContent = err.message;
          submitButton.disabled = false;
        } else {
          // network failure: keep the chosen answers and re-offer submission
          error.textContent = "network problem, your answers are kept; press submit to retry";
          submitButton.disabled = false;
        }
      }
    });
  }

  async function showResult(sessionId: string): Promise<void> {
    clear(container);
    const error = errorLine("test-error");
    container.append(el("h2", {}, "Test complete"), error);
    try {
      const score = await client.scoreTest(sessionId).catch(async (err) => {
        if (err instanceof ApiError && err.code === "NotSubmitted") {
          // already scored earlier (e.g. page reload on the result screen)
          return null;
        }
        throw err;
      });
      const studentId = localStorage.getItem(STUDENT_KEY) ?? "";
      const placement = await client.place(studentId);
      const summary = el("div", { "data-testid": "result-summary" });
      if (score) {
        summary.append(
          el(
            "p",
            { "data-testid": "result-score" },
            `Total ${score.total} / 40 (${score.percentage}%)`,
          ),
          el(
            "p",
            {},
            `Sections: english ${score.s_english}, mathematical reasoning ${score.s_math_reasoning}, ` +
              `computer ${score.s_computer}, intelligence quotient ${score.s_iq}`,
          ),
        );
      }
      summary.append(
        el("p", { "data-testid": "result-level" }, `Assigned level: ${pretty(placement.level)}`),
      );
      container.append(summary);
      if (placement.level === "not_eligible") {
        container.append(
          el(
            "p",
            { "data-testid": "result-not-eligible" },
            "Below the eligibility threshold: not eligible for the programme.",
          ),
        );
      } else {
        try {
          const enrollment = await client.enroll(studentId);
          container.append(
            el(
              "p",
              { "data-testid": "result-track" },
              `Enrolled in ${pretty(enrollment.track)} (attempt ${enrollment.attempt_number})`,
            ),
          );
        } catch (err) {
          if (err instanceof ApiError && err.code === "AlreadyEnrolled") {
            container.append(el("p", { "data-testid": "result-track" }, "Already enrolled in your track."));
          } else {
            throw err;
          }
        }
      }
      localStorage.removeItem(SESSION_KEY);
      const again = el("button", { "data-testid": "test-again" }, "Back to start");
      again.addEventListener("click", () => showStart());
      container.append(again);
    } catch (err) {
      error.textContent = err instanceof ApiError ? err.message : "network problem, please reload";
    }
  }
}
