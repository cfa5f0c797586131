/**
 * Typed client for the placement service HTTP API.
 *
 * Every displayed number in the UI comes from one of these calls; the UI
 * itself never scores or places. Error bodies are `{code, message, ...}`
 * and surface as ApiError so views can route field-level messages.
 */

export interface PersonalProfile {
  student_id: string;
  full_name: string;
  gender: string;
  date_of_birth: string;
  contact_email: string;
}

export interface CulturalProfile {
  student_id: string;
  school_type: string;
  medium_of_instruction: string;
  course_contents: string;
  computer_knowledge: string;
  region: string;
  school_environment: string;
  economic_background: string;
}

export interface ReferenceValue {
  ra: number;
  factor_scores: Record<string, number>;
}

export interface RegisterResponse {
  student_id: string;
  reference_value: ReferenceValue;
}

export interface SessionQuestion {
  question_id: string;
  prompt: string;
  options: string[];
}

export interface CurrentSectionView {
  session_id: string;
  state: string;
  current_section: string | null;
  progress: { sections_completed: number; sections_total: number };
  questions: SessionQuestion[];
}

export interface SessionView {
  session_id: string;
  student_id: string;
  state: string;
  current_section: string | null;
  served_questions: Record<string, string[]>;
}

export interface SubmitResult {
  session_id: string;
  section: string;
  section_score: number;
  state: string;
  current_section: string | null;
}

export interface TestScore {
  session_id: string;
  student_id: string;
  s_english: number;
  s_math_reasoning: number;
  s_computer: number;
  s_iq: number;
  total: number;
  percentage: number;
}

export interface PlacementDecision {
  student_id: string;
  level: string;
  ra: number;
  percentage: number;
  rule_fired: string;
}

export interface Enrollment {
  student_id: string;
  track: string;
  status: string;
  attempt_number: number;
}

export interface QuestionView {
  question_id: string;
  section: string;
  prompt: string;
  options: string[];
  status: string;
  points: number;
}

export interface QuestionPayload {
  section: string;
  prompt: string;
  options: string[];
  correct_option: number;
}

export interface DistributionCell {
  count: number;
  percentage: number;
}

export interface CohortStats {
  cohort_size: number;
  gender_distribution: Record<string, DistributionCell>;
  level_distribution: Record<string, DistributionCell>;
  cross_tab: { dimension: string; cells: Record<string, Record<string, number>> };
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public field?: string,
    public section?: string,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  /** Optional hook observing every raw response body (used by tests). */
  inspect?: (body: string, path: string) => void;

  constructor(
    public baseUrl: string,
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    this.inspect?.(text, path);
    if (!response.ok) {
      let code = "HttpError";
      let message = text || `HTTP ${response.status}`;
      let field: string | undefined;
      let section: string | undefined;
      try {
        const parsed = JSON.parse(text);
        code = parsed.code ?? code;
        message = parsed.message ?? message;
        field = parsed.field;
        section = parsed.section;
      } catch {
        // non-JSON error body; keep the raw text
      }
      throw new ApiError(response.status, code, message, field, section);
    }
    return (text ? JSON.parse(text) : {}) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/api/health");
  }

  register(personal: PersonalProfile, cultural: CulturalProfile): Promise<RegisterResponse> {
    return this.request("POST", "/api/students", { personal, cultural });
  }

  getStudent(studentId: string): Promise<{ personal: PersonalProfile; cultural: CulturalProfile }> {
    return this.request("GET", `/api/students/${encodeURIComponent(studentId)}`);
  }

  startTest(studentId: string, seed?: number): Promise<SessionView> {
    const body = seed === undefined ? {} : { seed };
    return this.request("POST", `/api/students/${encodeURIComponent(studentId)}/test-sessions`, body);
  }

  currentSection(sessionId: string): Promise<CurrentSectionView> {
    return this.request("GET", `/api/test-sessions/${encodeURIComponent(sessionId)}/current-section`);
  }

  submitAnswers(sessionId: string, section: string, answers: number[]): Promise<SubmitResult> {
    return this.request(
      "POST",
      `/api/test-sessions/${encodeURIComponent(sessionId)}/sections/${encodeURIComponent(section)}/answers`,
      { answers },
    );
  }

  scoreTest(sessionId: string): Promise<TestScore> {
    return this.request("POST", `/api/test-sessions/${encodeURIComponent(sessionId)}/score`);
  }

  place(studentId: string): Promise<PlacementDecision> {
    return this.request("POST", `/api/students/${encodeURIComponent(studentId)}/placement`);
  }

  enroll(studentId: string): Promise<Enrollment> {
    return this.request("POST", `/api/students/${encodeURIComponent(studentId)}/enrollment`);
  }

  listQuestions(filters: { section?: string; status?: string } = {}): Promise<{ questions: QuestionView[] }> {
    const params = new URLSearchParams();
    if (filters.section) params.set("section", filters.section);
    if (filters.status) params.set("status", filters.status);
    const query = params.toString();
    return this.request("GET", `/api/admin/questions${query ? "?" + query : ""}`);
  }

  createQuestion(payload: QuestionPayload): Promise<QuestionView> {
    return this.request("POST", "/api/admin/questions", payload);
  }

  updateQuestion(questionId: string, payload: QuestionPayload): Promise<QuestionView> {
    return this.request("PUT", `/api/admin/questions/${encodeURIComponent(questionId)}`, payload);
  }

  deleteQuestion(questionId: string): Promise<void> {
    return this.request("DELETE", `/api/admin/questions/${encodeURIComponent(questionId)}`);
  }

  approveQuestion(questionId: string): Promise<QuestionView> {
    return this.request("POST", `/api/admin/questions/${encodeURIComponent(questionId)}/approve`);
  }

  cohortStats(dimension: string): Promise<CohortStats> {
    return this.request("GET", `/api/analytics/cohort?dimension=${encodeURIComponent(dimension)}`);
  }
}
