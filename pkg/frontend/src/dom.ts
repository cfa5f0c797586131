/** Small DOM construction helpers; no framework. */

type Attrs = Record<string, string>;
type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function option(value: string, label?: string): HTMLOptionElement {
  return el("option", { value }, label ?? value);
}

export function labeled(labelText: string, input: HTMLElement, testId: string): HTMLElement {
  input.setAttribute("data-testid", testId);
  return el("div", { class: "field" }, el("label", {}, labelText), input);
}

export function errorLine(testId: string): HTMLElement {
  return el("p", { class: "error", "data-testid": testId });
}

/** Human label for a wire-format enum value ("mathematical_reasoning" -> "Mathematical Reasoning"). */
export function pretty(value: string): string {
  return value
    .split("_")
    .map((part) => part.charAt(0).toUpperCase() + part.slice(1))
    .join(" ");
}
