/** The scripted session against the real workbench service.
 *
 * Builds a store with fixtures, assigns reviews through the CLI, boots the
 * HTTP service, and replays the two-annotator session with a planted
 * disagreement. Every number the dashboard renders must equal the API value.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { QueueController } from "../src/state.js";
import { renderDashboard } from "../src/views.js";

const PORT = 8400 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

const RECORDS = [
  { id: "n0", text: "County officials published the turnout schedule on Tuesday.", label: 0 },
  { id: "n1", text: "A fabricated memo claims the ballots were invented by a hoax committee.", label: 1 },
  { id: "n2", text: "Reporters confirmed the routine audit matched the published record.", label: 0 },
  { id: "n3", text: "A viral conspiracy post spread a doctored image of the precinct.", label: 1 },
  { id: "n4", text: "The campaign filed its statement before the statewide meeting.", label: 0 },
  { id: "n5", text: "An unsourced miracle poll pushed debunked numbers overnight.", label: 1 },
];

const ANNOTATORS = [
  { id: "a1", display_name: "Ada", role: "ml_scientist", token: "tok-a1" },
  { id: "a2", display_name: "Ben", role: "linguist", token: "tok-a2" },
  { id: "a3", display_name: "Cam", role: "data_scientist", token: "tok-a3" },
];

let storeDir: string;
let server: ChildProcess | undefined;

function jsonl(rows: object[]): string {
  return rows.map((row) => JSON.stringify(row)).join("\n") + "\n";
}

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/api/v1/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("service never became healthy");
}

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), "newsbench-ui-"));
  writeFileSync(
    join(storeDir, "corpus.jsonl"),
    jsonl(RECORDS.map(({ id, text }) => ({ id, dataset: "fixture", text }))),
  );
  writeFileSync(join(storeDir, "annotators.jsonl"), jsonl(ANNOTATORS));
  // only the first two annotators receive first-round assignments
  writeFileSync(join(storeDir, "annotators_pair.jsonl"), jsonl(ANNOTATORS.slice(0, 2)));

  const assign = spawnSync(
    "newsbench",
    [
      "label", "assign",
      "--corpus", join(storeDir, "corpus.jsonl"),
      "--annotators", join(storeDir, "annotators_pair.jsonl"),
      "--seed", "7",
      "--store", storeDir,
    ],
    { encoding: "utf-8" },
  );
  expect(assign.status, assign.stderr).toBe(0);

  server = spawn("newsbench", ["serve", "--port", String(PORT), "--store", storeDir], {
    stdio: "ignore",
  });
  await waitForHealth();
});

afterAll(() => {
  server?.kill("SIGTERM");
  if (storeDir) rmSync(storeDir, { recursive: true, force: true });
});

const trueLabel = (recordId: string): 0 | 1 =>
  (RECORDS.find((record) => record.id === recordId)?.label ?? 0) as 0 | 1;

describe("scripted session against the live service", () => {
  it("runs the full review-adjudicate-dashboard flow", async () => {
    // annotator 1 empties the queue; the first item is double-submitted
    const q1 = new QueueController(new ApiClient(BASE, "tok-a1", fetch), "a1");
    await q1.refresh();
    expect(q1.items.length).toBe(6);
    const first = q1.items[0].record_id;
    await Promise.all([q1.submit(first, trueLabel(first)), q1.submit(first, trueLabel(first))]);
    while (q1.current) {
      await q1.submit(q1.current.record_id, trueLabel(q1.current.record_id));
    }
    await q1.refresh();
    expect(q1.items).toEqual([]);

    // double submit left exactly one review: resubmitting the same label is a
    // 200 no-op, a different label is a 409 conflict
    const apiA1 = new ApiClient(BASE, "tok-a1", fetch);
    await apiA1.submitReview(first, trueLabel(first));
    await expect(
      apiA1.submitReview(first, (1 - trueLabel(first)) as 0 | 1),
    ).rejects.toMatchObject({ status: 409 });

    // annotator 2 follows the script but flips n3
    const q2 = new QueueController(new ApiClient(BASE, "tok-a2", fetch), "a2");
    await q2.refresh();
    while (q2.current) {
      const id = q2.current.record_id;
      const label = id === "n3" ? ((1 - trueLabel(id)) as 0 | 1) : trueLabel(id);
      await q2.submit(id, label);
    }
    await q2.refresh();
    expect(q2.items).toEqual([]);

    // third annotator resolves the planted disagreement by majority
    const apiA3 = new ApiClient(BASE, "tok-a3", fetch);
    const open = await apiA3.fetchAdjudications();
    expect(open.cases.map((c) => c.record_id)).toEqual(["n3"]);
    const resolved = await apiA3.submitReview("n3", trueLabel("n3"));
    expect(resolved.status).toBe("adjudicated_by_third");
    expect((await apiA3.fetchAdjudications()).cases).toEqual([]);

    // dashboard renders the agreement payload digit for digit
    const payload = await apiA3.fetchAgreement();
    expect(payload.unresolved).toBe(0);
    expect(payload.pairs.length).toBe(1);
    expect(payload.pairs[0].n_items).toBe(6);
    document.body.innerHTML = "<div id='app'></div>";
    const root = document.getElementById("app") as HTMLElement;
    renderDashboard(root, payload);
    expect(root.querySelector("[data-role=kappa]")?.textContent).toBe(
      String(payload.pairs[0].kappa),
    );
    expect(root.querySelector("[data-role=pooled-kappa]")?.textContent).toContain(
      String(payload.pooled?.kappa),
    );
  });
});
