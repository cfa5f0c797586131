/**
 * Two-step registration wizard: personal details, then cultural background.
 * On success it shows the reference value the server computed at signup.
 */

import { ApiClient, ApiError, CulturalProfile, PersonalProfile } from "../api.js";
import { clear, el, errorLine, labeled, option, pretty } from "../dom.js";

const GENDERS = ["male", "female", "other"];
const SCHOOL_TYPES = ["government", "private"];
const MEDIA = ["local_language", "english"];
const CONTENTS = ["local", "international"];
const KNOWLEDGE = ["none", "basic", "proficient"];
const ECONOMIC = ["low", "middle", "high"];

function select(values: string[]): HTMLSelectElement {
  const node = el("select", {});
  node.append(option("", "choose..."));
  for (const value of values) {
    node.append(option(value, pretty(value)));
  }
  return node;
}

export function mountWizard(root: HTMLElement, client: ApiClient): void {
  clear(root);

  const personalInputs = {
    student_id: el("input", { type: "text" }),
    full_name: el("input", { type: "text" }),
    gender: select(GENDERS),
    date_of_birth: el("input", { type: "date", placeholder: "YYYY-MM-DD" }),
    contact_email: el("input", { type: "email" }),
  };
  const culturalInputs = {
    school_type: select(SCHOOL_TYPES),
    medium_of_instruction: select(MEDIA),
    course_contents: select(CONTENTS),
    computer_knowledge: select(KNOWLEDGE),
    region: el("input", { type: "text" }),
    school_environment: el("input", { type: "text" }),
    economic_background: select(ECONOMIC),
  };

  const stepError = errorLine("wizard-error");

  const stepOne = el(
    "section",
    { "data-testid": "wizard-step-1" },
    el("h2", {}, "Registration 1/2: personal details"),
    labeled("Student id", personalInputs.student_id, "personal-student_id"),
    labeled("Full name", personalInputs.full_name, "personal-full_name"),
    labeled("Gender", personalInputs.gender, "personal-gender"),
    labeled("Date of birth", personalInputs.date_of_birth, "personal-date_of_birth"),
    labeled("Contact email", personalInputs.contact_email, "personal-contact_email"),
  );
  const nextButton = el("button", { "data-testid": "wizard-next" }, "Next");
  stepOne.append(nextButton, stepError);

  const stepTwo = el(
    "section",
    { "data-testid": "wizard-step-2", hidden: "" },
    el("h2", {}, "Registration 2/2: cultural background"),
    labeled("School type", culturalInputs.school_type, "cultural-school_type"),
    labeled("Medium of instruction", culturalInputs.medium_of_instruction, "cultural-medium_of_instruction"),
    labeled("Course contents of previous study", culturalInputs.course_contents, "cultural-course_contents"),
    labeled("Computer knowledge", culturalInputs.computer_knowledge, "cultural-computer_knowledge"),
    labeled("Region", culturalInputs.region, "cultural-region"),
    labeled("School environment", culturalInputs.school_environment, "cultural-school_environment"),
    labeled("Economic background", culturalInputs.economic_background, "cultural-economic_background"),
  );
  const backButton = el("button", { "data-testid": "wizard-back" }, "Back");
  const submitButton = el("button", { "data-testid": "wizard-submit" }, "Register");
  stepTwo.append(backButton, submitButton, stepError);

  const success = el("section", { "data-testid": "wizard-success", hidden: "" });

  root.append(el("div", { class: "wizard" }, stepOne, stepTwo, success));

  function showError(message: string): void {
    stepError.textContent = message;
  }

  function firstEmpty(inputs: Record<string, HTMLInputElement | HTMLSelectElement>): string | null {
    for (const [name, input] of Object.entries(inputs)) {
      const optional = name === "region" || name === "school_environment";
      if (!optional && input.value.trim() === "") {
        return name;
      }
    }
    return null;
  }

  nextButton.addEventListener("click", () => {
    const missing = firstEmpty(personalInputs);
    if (missing) {
      showError(`please fill in ${pretty(missing)}`);
      return;
    }
    showError("");
    stepOne.hidden = true;
    stepTwo.hidden = false;
    stepTwo.append(stepError);
  });

  backButton.addEventListener("click", () => {
    stepTwo.hidden = true;
    stepOne.hidden = false;
    stepOne.append(stepError);
  });

  submitButton.addEventListener("click", async () => {
    const missing = firstEmpty(culturalInputs);
    if (missing) {
      showError(`please fill in ${pretty(missing)}`);
      return;
    }
    showError("");
    const studentId = personalInputs.student_id.value.trim();
    const personal: PersonalProfile = {
      student_id: studentId,
      full_name: personalInputs.full_name.value,
      gender: personalInputs.gender.value,
      date_of_birth: personalInputs.date_of_birth.value,
      contact_email: personalInputs.contact_email.value,
    };
    const cultural: CulturalProfile = {
      student_id: studentId,
      school_type: culturalInputs.school_type.value,
      medium_of_instruction: culturalInputs.medium_of_instruction.value,
      course_contents: culturalInputs.course_contents.value,
      computer_knowledge: culturalInputs.computer_knowledge.value,
      region: culturalInputs.region.value,
      school_environment: culturalInputs.school_environment.value,
      economic_background: culturalInputs.economic_background.value,
    };
    try {
      const result = await client.register(personal, cultural);
      stepTwo.hidden = true;
      clear(success);
      const factors = Object.entries(result.reference_value.factor_scores)
        .map(([factor, score]) => `${pretty(factor)}: ${score}`)
        .join(", ");
      success.append(
        el("h2", {}, "Registration complete"),
        el("p", { "data-testid": "success-student-id" }, `Student id: ${result.student_id}`),
        el(
          "p",
          { "data-testid": "success-reference-value" },
          `Reference value ${result.reference_value.ra} (${factors})`,
        ),
      );
      success.hidden = false;
    } catch (err) {
      if (err instanceof ApiError) {
        showError(err.field ? `${pretty(err.field)}: ${err.message}` : err.message);
      } else {
        showError("network problem, please try again");
      }
    }
  });
}
