/** DOM rendering. Scraped news text is untrusted, so every string lands in
 * the document through textContent; nothing is ever parsed as markup. Numbers
 * from the agreement endpoint are rendered verbatim via String(), never
 * recomputed or reformatted client-side. */

import type { AgreementPayload, AdjudicationCase, QueueItem } from "./types.js";

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export interface QueueCardHandlers {
  onVerdict: (recordId: string, label: 0 | 1) => void;
}

export function renderQueueItem(item: QueueItem, handlers: QueueCardHandlers): HTMLElement {
  const meta: string[] = [item.dataset];
  if (item.published_at) meta.push(item.published_at);
  if (item.keyword_group) meta.push(`group: ${item.keyword_group}`);

  const children: (Node | string)[] = [
    el("div", { class: "queue-meta" }, [meta.join(" · ")]),
    el("p", { class: "queue-text" }, [item.text]),
  ];
  if (item.suggestion && item.suggestion.visible) {
    children.push(
      el("div", { class: "suggestion-badge", "data-role": "suggestion" }, [
        `model suggests: ${item.suggestion.label === 1 ? "fake" : "real"}`,
      ]),
    );
  }
  const fakeButton = el("button", { class: "verdict fake", "data-verdict": "1" }, ["Fake (1)"]);
  const realButton = el("button", { class: "verdict real", "data-verdict": "0" }, ["Real (0)"]);
  fakeButton.addEventListener("click", () => handlers.onVerdict(item.record_id, 1));
  realButton.addEventListener("click", () => handlers.onVerdict(item.record_id, 0));
  children.push(el("div", { class: "verdict-row" }, [fakeButton, realButton]));

  return el("article", { class: "queue-item", "data-record-id": item.record_id }, children);
}

export function renderQueue(
  container: HTMLElement,
  items: QueueItem[],
  submitted: number,
  handlers: QueueCardHandlers,
): void {
  container.replaceChildren();
  container.append(
    el("div", { class: "queue-progress", "data-role": "progress" }, [
      `${submitted} reviewed · ${items.length} remaining`,
    ]),
  );
  if (items.length === 0) {
    container.append(el("p", { class: "empty-state" }, ["Queue empty. Nothing left to review."]));
    return;
  }
  for (const item of items) {
    container.append(renderQueueItem(item, handlers));
  }
}

export function renderDashboard(container: HTMLElement, payload: AgreementPayload): void {
  container.replaceChildren();
  const table = el("table", { class: "agreement-table" });
  table.append(
    el("tr", {}, [
      el("th", {}, ["Pair"]),
      el("th", {}, ["Items"]),
      el("th", {}, ["p_o"]),
      el("th", {}, ["p_e"]),
      el("th", {}, ["Kappa"]),
      el("th", {}, ["Gate"]),
    ]),
  );
  for (const row of payload.pairs) {
    const pairLabel = row.pair ? row.pair.join(" + ") : "pooled";
    table.append(
      el("tr", { "data-pair": pairLabel }, [
        el("td", {}, [pairLabel]),
        el("td", {}, [String(row.n_items)]),
        el("td", {}, [String(row.p_o)]),
        el("td", {}, [String(row.p_e)]),
        el("td", { "data-role": "kappa" }, [String(row.kappa)]),
        el("td", {}, [row.passes_gate ? "pass" : "fail"]),
      ]),
    );
  }
  container.append(table);
  if (payload.pooled) {
    container.append(
      el("div", { class: "pooled", "data-role": "pooled-kappa" }, [
        `pooled kappa: ${String(payload.pooled.kappa)} over ${String(payload.pooled.n_items)} pairs`,
      ]),
    );
  }
  for (const pair of payload.undefined_pairs) {
    container.append(
      el("div", { class: "undefined-pair" }, [
        `${pair.join(" + ")}: kappa undefined (no label variation)`,
      ]),
    );
  }
  container.append(
    el("div", { class: "unresolved", "data-role": "unresolved" }, [
      `unresolved disagreements: ${String(payload.unresolved)}`,
    ]),
  );
}

export interface AdjudicationHandlers {
  onResolve: (recordId: string, label: 0 | 1) => void;
}

export function renderAdjudications(
  container: HTMLElement,
  cases: AdjudicationCase[],
  handlers: AdjudicationHandlers,
): void {
  container.replaceChildren();
  if (cases.length === 0) {
    container.append(el("p", { class: "empty-state" }, ["No disagreements to resolve."]));
    return;
  }
  for (const disagreement of cases) {
    const fakeButton = el("button", { class: "verdict fake", "data-verdict": "1" }, ["Fake (1)"]);
    const realButton = el("button", { class: "verdict real", "data-verdict": "0" }, ["Real (0)"]);
    fakeButton.addEventListener("click", () => handlers.onResolve(disagreement.record_id, 1));
    realButton.addEventListener("click", () => handlers.onResolve(disagreement.record_id, 0));
    container.append(
      el("article", { class: "adjudication-case", "data-record-id": disagreement.record_id }, [
        el("p", { class: "queue-text" }, [disagreement.text]),
        // prior labels are shown without reviewer identities
        el("div", { class: "prior-labels" }, [
          `prior reviews: ${disagreement.labels.map((l) => (l === 1 ? "fake" : "real")).join(", ")}`,
        ]),
        el("div", { class: "verdict-row" }, [fakeButton, realButton]),
      ]),
    );
  }
}

export interface ConflictHandlers {
  onSupersede: (recordId: string, label: 0 | 1) => void;
  onDismiss: () => void;
}

export function renderConflictDialog(
  container: HTMLElement,
  recordId: string,
  storedLabel: 0 | 1,
  attemptedLabel: 0 | 1,
  handlers: ConflictHandlers,
): void {
  const describe = (label: 0 | 1) => (label === 1 ? "fake" : "real");
  const supersedeButton = el("button", { class: "supersede", "data-role": "supersede" }, [
    `Replace with ${describe(attemptedLabel)}`,
  ]);
  const keepButton = el("button", { class: "keep", "data-role": "keep" }, [
    `Keep ${describe(storedLabel)}`,
  ]);
  supersedeButton.addEventListener("click", () => handlers.onSupersede(recordId, attemptedLabel));
  keepButton.addEventListener("click", () => handlers.onDismiss());
  container.replaceChildren(
    el("div", { class: "conflict-dialog", "data-role": "conflict", "data-record-id": recordId }, [
      el("p", {}, [
        `You already reviewed this record as ${describe(storedLabel)}; ` +
          `this submission says ${describe(attemptedLabel)}.`,
      ]),
      el("div", { class: "verdict-row" }, [supersedeButton, keepButton]),
    ]),
  );
}
