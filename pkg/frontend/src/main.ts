/** Application shell: sign-in, tabbed queue / adjudication / dashboard views,
 * and the keyboard-first review flow (1 = fake, 0 = real, Enter = submit). */

import { ApiClient, ApiError, type FetchLike } from "./api.js";
import { QueueController } from "./state.js";
import {
  el,
  renderAdjudications,
  renderConflictDialog,
  renderDashboard,
  renderQueue,
} from "./views.js";

type Tab = "queue" | "adjudication" | "dashboard";

export class App {
  private api!: ApiClient;
  private queue!: QueueController;
  private annotatorId = "";
  private tab: Tab = "queue";
  private selectedVerdict: 0 | 1 | null = null;
  private root: HTMLElement;
  private content!: HTMLElement;
  private overlay!: HTMLElement;
  private status!: HTMLElement;
  private fetchImpl: FetchLike;

  constructor(root: HTMLElement, fetchImpl: FetchLike = fetch) {
    this.root = root;
    this.fetchImpl = fetchImpl;
  }

  mount(): void {
    this.root.replaceChildren();
    const form = el("form", { class: "signin" }, [
      el("label", {}, ["Annotator id", this.input("annotator", "a1")]),
      el("label", {}, ["Access token", this.input("token", "")]),
      el("button", { type: "submit" }, ["Sign in"]),
    ]);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const annotator = (form.querySelector("[name=annotator]") as HTMLInputElement).value.trim();
      const token = (form.querySelector("[name=token]") as HTMLInputElement).value.trim();
      void this.signIn(annotator, token);
    });
    this.root.append(form);
  }

  private input(name: string, value: string): HTMLElement {
    return el("input", { name, value, autocomplete: "off" });
  }

  async signIn(annotatorId: string, token: string, baseUrl = ""): Promise<void> {
    this.annotatorId = annotatorId;
    this.api = new ApiClient(baseUrl, token, this.fetchImpl);
    this.queue = new QueueController(this.api, annotatorId, {
      onChange: () => this.renderContent(),
      onConflict: ({ item, attempted, detail }) =>
        this.showConflict(item.record_id, detail.stored_label, attempted),
      onError: (error) => this.setStatus(`submission failed, will retry: ${error.message}`),
    });
    try {
      await this.queue.refresh();
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        this.setStatus("session rejected; check the token and sign in again");
        this.mount();
        return;
      }
      throw error;
    }
    this.renderShell();
  }

  private renderShell(): void {
    this.root.replaceChildren();
    const tabs = el("nav", { class: "tabs" });
    for (const tab of ["queue", "adjudication", "dashboard"] as Tab[]) {
      const button = el("button", { "data-tab": tab }, [tab]);
      button.addEventListener("click", () => void this.switchTab(tab));
      tabs.append(button);
    }
    this.status = el("div", { class: "status", "data-role": "status" });
    this.content = el("main", { class: "content" });
    this.overlay = el("div", { class: "overlay" });
    this.root.append(
      el("header", {}, [el("strong", {}, [`Reviewing as ${this.annotatorId}`]), tabs]),
      this.status,
      this.content,
      this.overlay,
    );
    document.addEventListener("keydown", this.onKeyDown);
    this.renderContent();
  }

  async switchTab(tab: Tab): Promise<void> {
    this.tab = tab;
    if (tab === "queue") await this.queue.refresh();
    else this.renderContent();
    if (tab === "adjudication") {
      const payload = await this.api.fetchAdjudications();
      renderAdjudications(this.content, payload.cases, {
        onResolve: (recordId, label) => void this.resolve(recordId, label),
      });
    } else if (tab === "dashboard") {
      const payload = await this.api.fetchAgreement();
      renderDashboard(this.content, payload);
    }
  }

  private renderContent(): void {
    if (!this.content || this.tab !== "queue") return;
    renderQueue(this.content, this.queue.items, this.queue.submitted, {
      onVerdict: (recordId, label) => void this.queue.submit(recordId, label),
    });
  }

  private async resolve(recordId: string, label: 0 | 1): Promise<void> {
    await this.api.submitReview(recordId, label);
    const payload = await this.api.fetchAdjudications();
    renderAdjudications(this.content, payload.cases, {
      onResolve: (rid, l) => void this.resolve(rid, l),
    });
  }

  private showConflict(recordId: string, stored: 0 | 1, attempted: 0 | 1): void {
    renderConflictDialog(this.overlay, recordId, stored, attempted, {
      onSupersede: (rid, label) => {
        void this.queue.supersede(rid, label).then(() => this.overlay.replaceChildren());
      },
      onDismiss: () => this.overlay.replaceChildren(),
    });
  }

  private setStatus(message: string): void {
    if (this.status) this.status.replaceChildren(document.createTextNode(message));
  }

  /** Keyboard flow: 1/0 choose the verdict for the top queue item, Enter submits. */
  private onKeyDown = (event: KeyboardEvent): void => {
    if (this.tab !== "queue") return;
    const target = event.target as HTMLElement | null;
    if (target && (target.tagName === "INPUT" || target.tagName === "TEXTAREA")) return;
    if (event.key === "1") this.selectedVerdict = 1;
    else if (event.key === "0") this.selectedVerdict = 0;
    else if (event.key === "Enter" && this.selectedVerdict !== null) {
      const top = this.queue.current;
      if (top) void this.queue.submit(top.record_id, this.selectedVerdict);
      this.selectedVerdict = null;
    }
  };
}

export function boot(): void {
  const root = document.getElementById("app");
  if (root) new App(root).mount();
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
