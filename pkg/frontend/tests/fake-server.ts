/** In-memory stand-in for the workbench service, faithful to the documented
 * /api/v1 contract: same routes, same status codes, same payload shapes. The
 * unit tests drive the UI against this; the integration test replays the same
 * flows against the real service.
 */

import type { FetchLike } from "../src/api.js";

export interface FakeRecord {
  record_id: string;
  text: string;
  dataset: string;
  suggestion?: 0 | 1;
}

interface Review {
  label: 0 | 1;
  round: "first" | "third";
}

export class FakeServer {
  tokens: Record<string, string>;
  records: FakeRecord[];
  suggestionsVisible: boolean;
  assignments = new Map<string, string[]>(); // record_id -> [annotator, annotator]
  reviews = new Map<string, Review>(); // `${record}|${annotator}`
  requestLog: string[] = [];
  failNextSubmit = false;

  constructor(options: {
    tokens: Record<string, string>;
    records: FakeRecord[];
    suggestionsVisible?: boolean;
  }) {
    this.tokens = options.tokens;
    this.records = options.records;
    this.suggestionsVisible = options.suggestionsVisible ?? false;
  }

  assign(recordId: string, annotators: [string, string]): void {
    this.assignments.set(recordId, [...annotators]);
  }

  assignAll(annotators: [string, string]): void {
    for (const record of this.records) this.assign(record.record_id, annotators);
  }

  reviewCount(recordId: string): number {
    return [...this.reviews.keys()].filter((key) => key.startsWith(`${recordId}|`)).length;
  }

  storedLabel(recordId: string, annotator: string): 0 | 1 | undefined {
    return this.reviews.get(`${recordId}|${annotator}`)?.label;
  }

  private firstRoundLabels(recordId: string): (0 | 1)[] {
    const pair = this.assignments.get(recordId) ?? [];
    return pair
      .map((annotator) => this.reviews.get(`${recordId}|${annotator}`))
      .filter((review): review is Review => review !== undefined)
      .map((review) => review.label);
  }

  adjudicationStatus(recordId: string): string | null {
    const labels = this.firstRoundLabels(recordId);
    if (labels.length < 2) return null;
    if (labels[0] === labels[1]) return "agreed";
    const third = [...this.reviews.entries()].find(
      ([key, review]) => key.startsWith(`${recordId}|`) && review.round === "third",
    );
    return third ? "adjudicated_by_third" : "needs_adjudication";
  }

  finalLabel(recordId: string): 0 | 1 | null {
    const labels = [...this.reviews.entries()]
      .filter(([key]) => key.startsWith(`${recordId}|`))
      .map(([, review]) => review.label);
    if (labels.length < 2) return null;
    const ones = labels.filter((label) => label === 1).length;
    if (labels.length === 2 && ones === 1) return null;
    return ones * 2 > labels.length ? 1 : 0;
  }

  private agreement() {
    // mirror of the server's pairwise + pooled kappa over first-round reviews
    const byPair = new Map<string, [number, number][]>();
    for (const [recordId, pair] of this.assignments) {
      const labels = this.firstRoundLabels(recordId);
      if (labels.length !== 2) continue;
      const ordered = [...pair].sort();
      const key = ordered.join("|");
      const byAnnotator: Record<string, number> = {
        [pair[0]]: labels[0],
        [pair[1]]: labels[1],
      };
      const entry: [number, number] = [byAnnotator[ordered[0]], byAnnotator[ordered[1]]];
      byPair.set(key, [...(byPair.get(key) ?? []), entry]);
    }
    const kappaOf = (pairs: [number, number][]) => {
      const n = pairs.length;
      const agree = pairs.filter(([a, b]) => a === b).length;
      const pO = agree / n;
      const pa1 = pairs.filter(([a]) => a === 1).length / n;
      const pb1 = pairs.filter(([, b]) => b === 1).length / n;
      const pE = pa1 * pb1 + (1 - pa1) * (1 - pb1);
      if (Math.abs(pE - 1) < 1e-12) return null;
      const kappa = (pO - pE) / (1 - pE);
      return { n_items: n, p_o: pO, p_e: pE, kappa, passes_gate: kappa >= 0.8 };
    };
    const pairs = [];
    const undefinedPairs = [];
    const pooled: [number, number][] = [];
    for (const [key, labelPairs] of [...byPair.entries()].sort()) {
      pooled.push(...labelPairs);
      const stats = kappaOf(labelPairs);
      if (stats === null) undefinedPairs.push(key.split("|"));
      else pairs.push({ pair: key.split("|"), ...stats });
    }
    const pooledStats = pooled.length ? kappaOf(pooled) : null;
    const unresolved = [...this.assignments.keys()].filter(
      (recordId) => this.adjudicationStatus(recordId) === "needs_adjudication",
    ).length;
    return {
      pairs,
      undefined_pairs: undefinedPairs,
      pooled: pooledStats ? { pair: null, ...pooledStats } : null,
      unresolved,
    };
  }

  fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://fake.local");
    const path = url.pathname;
    const method = init?.method ?? "GET";
    this.requestLog.push(`${method} ${path}`);
    const token = (init?.headers as Record<string, string>)?.["X-Annotator-Token"];
    const caller = token ? this.tokens[token] : undefined;

    const json = (status: number, body: unknown) =>
      new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });

    if (path === "/api/v1/health") return json(200, { status: "ok" });
    if (!caller) return json(401, { detail: "missing or unknown annotator token" });

    if (path.startsWith("/api/v1/queue/")) {
      const annotatorId = path.split("/").pop() ?? "";
      if (annotatorId !== caller) return json(403, { detail: "queues are private" });
      const items = this.records
        .filter((record) => {
          const pair = this.assignments.get(record.record_id) ?? [];
          return pair.includes(annotatorId) && !this.reviews.has(`${record.record_id}|${annotatorId}`);
        })
        .map((record) => ({
          record_id: record.record_id,
          text: record.text,
          dataset: record.dataset,
          published_at: null,
          keyword_group: null,
          ...(this.suggestionsVisible && record.suggestion !== undefined
            ? { suggestion: { label: record.suggestion, visible: true } }
            : {}),
        }));
      return json(200, { annotator_id: annotatorId, items });
    }

    if (path === "/api/v1/reviews" && method === "POST") {
      if (this.failNextSubmit) {
        this.failNextSubmit = false;
        return json(500, { detail: "injected failure" });
      }
      const body = JSON.parse(init?.body as string) as {
        record_id: string;
        label: 0 | 1;
        supersede?: boolean;
      };
      const key = `${body.record_id}|${caller}`;
      const pair = this.assignments.get(body.record_id);
      if (!pair) return json(404, { detail: `unknown record ${body.record_id}` });
      if (body.supersede) {
        const existing = this.reviews.get(key);
        if (!existing) return json(404, { detail: "nothing to supersede" });
        this.reviews.set(key, { ...existing, label: body.label });
      } else if (pair.includes(caller)) {
        const existing = this.reviews.get(key);
        if (existing && existing.label !== body.label) {
          return json(409, {
            detail: {
              message: "review conflict",
              stored_label: existing.label,
              attempted_label: body.label,
            },
          });
        }
        if (!existing) this.reviews.set(key, { label: body.label, round: "first" });
      } else {
        if (this.adjudicationStatus(body.record_id) !== "needs_adjudication") {
          return json(404, { detail: "record is not awaiting adjudication" });
        }
        this.reviews.set(key, { label: body.label, round: "third" });
      }
      return json(200, {
        record_id: body.record_id,
        annotator_id: caller,
        label: body.label,
        status: this.adjudicationStatus(body.record_id) ?? "pending_second_review",
      });
    }

    if (path === "/api/v1/agreement") return json(200, this.agreement());

    if (path === "/api/v1/adjudications") {
      const cases = [...this.assignments.entries()]
        .filter(
          ([recordId, pair]) =>
            this.adjudicationStatus(recordId) === "needs_adjudication" && !pair.includes(caller),
        )
        .map(([recordId]) => ({
          record_id: recordId,
          text: this.records.find((record) => record.record_id === recordId)?.text ?? "",
          labels: [...this.firstRoundLabels(recordId)].sort(),
        }));
      return json(200, { cases });
    }

    return json(404, { detail: `no route ${method} ${path}` });
  };
}

export function makeRecords(count: number, prefix = "r"): FakeRecord[] {
  return Array.from({ length: count }, (_, i) => ({
    record_id: `${prefix}${i}`,
    text: `Queued snippet number ${i} about ballot counting.`,
    dataset: "fixture",
    suggestion: (i % 2) as 0 | 1,
  }));
}
