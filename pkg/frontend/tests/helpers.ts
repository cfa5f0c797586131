/**
 * Integration-test plumbing: spawn a real backend, build a recording API
 * client, and seed data through the public endpoints only.
 */

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import net from "node:net";
import os from "node:os";
import path from "node:path";

import { ApiClient } from "../src/api.js";

export interface Backend {
  baseUrl: string;
  dataDir: string;
  stop: () => Promise<void>;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const server = net.createServer();
    server.on("error", reject);
    server.listen(0, "127.0.0.1", () => {
      const port = (server.address() as net.AddressInfo).port;
      server.close(() => resolve(port));
    });
  });
}

async function waitForHealth(baseUrl: string, proc: ChildProcess, timeoutMs = 30_000): Promise<void> {
  const start = Date.now();
  for (;;) {
    if (proc.exitCode !== null) {
      throw new Error(`backend exited early with code ${proc.exitCode}`);
    }
    try {
      const response = await fetch(`${baseUrl}/api/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() - start > timeoutMs) {
      throw new Error("backend did not become healthy in time");
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
}

export async function startBackend(): Promise<Backend> {
  const dataDir = mkdtempSync(path.join(os.tmpdir(), "learnplace-ui-"));
  const port = await freePort();
  const proc = spawn(
    "python3",
    ["-m", "learnplace.cli", "serve", "--port", String(port), "--data-dir", dataDir],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  await waitForHealth(baseUrl, proc);
  return {
    baseUrl,
    dataDir,
    stop: () =>
      new Promise<void>((resolve) => {
        proc.once("exit", () => resolve());
        proc.kill("SIGTERM");
        setTimeout(() => proc.kill("SIGKILL"), 5_000).unref();
      }),
  };
}

/** Client whose every received body is recorded, so suites can assert the
 * answer key never reaches the UI. */
export function recordingClient(baseUrl: string, received: string[]): ApiClient {
  const client = new ApiClient(baseUrl);
  client.inspect = (body) => received.push(body);
  return client;
}

export function assertNoAnswerKey(received: string[]): void {
  const leaking = received.filter((body) => body.includes("correct_option"));
  if (leaking.length > 0) {
    throw new Error(`answer key leaked into ${leaking.length} received payload(s): ${leaking[0]}`);
  }
}

export async function waitFor<T>(
  probe: () => T | null | undefined | false,
  label: string,
  timeoutMs = 10_000,
): Promise<T> {
  const start = Date.now();
  for (;;) {
    const result = probe();
    if (result) return result as T;
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${label}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

export const SECTIONS = ["english", "mathematical_reasoning", "computer", "intelligence_quotient"];

/** Create and approve a full question bank; returns question_id -> correct option. */
export async function seedQuestions(client: ApiClient, perSection = 10): Promise<Map<string, number>> {
  const key = new Map<string, number>();
  for (const section of SECTIONS) {
    for (let index = 0; index < perSection; index += 1) {
      const correct = index % 4;
      const created = await client.createQuestion({
        section,
        prompt: `${section} seeded question ${index + 1}`,
        options: ["A", "B", "C", "D"].map((letter) => `${section} q${index + 1} ${letter}`),
        correct_option: correct,
      });
      await client.approveQuestion(created.question_id);
      key.set(created.question_id, correct);
    }
  }
  return key;
}

export function personalPayload(studentId: string, over: Partial<Record<string, string>> = {}) {
  return {
    student_id: studentId,
    full_name: `Student ${studentId}`,
    gender: "female",
    date_of_birth: "2001-05-05",
    contact_email: `${studentId}@example.org`,
    ...over,
  } as never;
}

export function culturalPayload(studentId: string, over: Partial<Record<string, string>> = {}) {
  return {
    student_id: studentId,
    school_type: "government",
    medium_of_instruction: "english",
    course_contents: "local",
    computer_knowledge: "basic",
    region: "north",
    school_environment: "urban",
    economic_background: "middle",
    ...over,
  } as never;
}

/** Drive one student through test + placement via the API (dashboard seeding). */
export async function placeViaApi(
  client: ApiClient,
  key: Map<string, number>,
  studentId: string,
  hitsPerSection: number,
  culturalOver: Partial<Record<string, string>> = {},
  personalOver: Partial<Record<string, string>> = {},
): Promise<void> {
  await client.register(personalPayload(studentId, personalOver), culturalPayload(studentId, culturalOver));
  const session = await client.startTest(studentId, 1234);
  for (const section of SECTIONS) {
    const served = session.served_questions[section];
    const answers = served.map((qid, position) => {
      const correct = key.get(qid) ?? 0;
      return position < hitsPerSection ? correct : (correct + 1) % 4;
    });
    await client.submitAnswers(session.session_id, section, answers);
  }
  await client.scoreTest(session.session_id);
  await client.place(studentId);
}
