/**
 * Shell: nav, hash routing, API base configuration.
 *
 * Views are self-contained and talk only to the REST API through ApiClient.
 */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { mountAdmin } from "./views/admin.js";
import { mountDashboard } from "./views/dashboard.js";
import { mountTestFlow } from "./views/testflow.js";
import { mountWizard } from "./views/wizard.js";

const API_BASE_KEY = "learnplace.api_base";

type View = (root: HTMLElement, client: ApiClient) => void;

const ROUTES: Record<string, { label: string; view: View }> = {
  "#/register": { label: "Register", view: mountWizard },
  "#/test": { label: "Aptitude test", view: mountTestFlow },
  "#/admin": { label: "Admin", view: mountAdmin },
  "#/analytics": { label: "Analytics", view: mountDashboard },
};

export function resolveApiBase(): string {
  const fromWindow = (window as unknown as { LEARNPLACE_API?: string }).LEARNPLACE_API;
  return fromWindow ?? localStorage.getItem(API_BASE_KEY) ?? "http://127.0.0.1:8000";
}

export function mountApp(root: HTMLElement): void {
  clear(root);
  const client = new ApiClient(resolveApiBase());

  const nav = el("nav", {});
  for (const [hash, route] of Object.entries(ROUTES)) {
    nav.append(el("a", { href: hash, "data-testid": `nav-${hash.slice(2)}` }, route.label));
  }
  const baseInput = el("input", { type: "text", "data-testid": "api-base", title: "API base URL" });
  baseInput.value = client.baseUrl;
  baseInput.addEventListener("change", () => {
    localStorage.setItem(API_BASE_KEY, baseInput.value.trim());
    client.baseUrl = baseInput.value.trim();
    render();
  });
  nav.append(baseInput);

  const viewRoot = el("main", { id: "view" });
  root.append(el("header", {}, el("h1", {}, "learnplace"), nav), viewRoot);

  function render(): void {
    const route = ROUTES[window.location.hash] ?? ROUTES["#/register"];
    route.view(viewRoot, client);
  }

  window.addEventListener("hashchange", render);
  render();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app") as HTMLElement);
}
