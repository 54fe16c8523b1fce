import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { QueueController, type ConflictEvent } from "../src/state.js";
import { FakeServer, makeRecords } from "./fake-server.js";

const TOKENS = { "tok-a1": "a1", "tok-a2": "a2", "tok-a3": "a3" };

function setup() {
  const server = new FakeServer({ tokens: TOKENS, records: makeRecords(3) });
  server.assignAll(["a1", "a2"]);
  const api = new ApiClient("", "tok-a1", server.fetch);
  return { server, api };
}

describe("optimistic review submission", () => {
  it("removes the item immediately and counts progress", async () => {
    const { server, api } = setup();
    const queue = new QueueController(api, "a1");
    await queue.refresh();
    const ok = await queue.submit("r0", 1);
    expect(ok).toBe(true);
    expect(queue.items.map((item) => item.record_id)).toEqual(["r1", "r2"]);
    expect(queue.submitted).toBe(1);
    expect(server.storedLabel("r0", "a1")).toBe(1);
  });

  it("rolls the item back at its old position on server failure", async () => {
    const { server, api } = setup();
    const errors: Error[] = [];
    const queue = new QueueController(api, "a1", { onError: (e) => errors.push(e) });
    await queue.refresh();
    server.failNextSubmit = true;
    const ok = await queue.submit("r1", 0);
    expect(ok).toBe(false);
    expect(queue.items.map((item) => item.record_id)).toEqual(["r0", "r1", "r2"]);
    expect(errors.length).toBe(1);
    // retry with the same payload succeeds (idempotency makes this safe)
    expect(await queue.submit("r1", 0)).toBe(true);
    expect(server.storedLabel("r1", "a1")).toBe(0);
  });

  it("a double submit stores exactly one review", async () => {
    const { server, api } = setup();
    const queue = new QueueController(api, "a1");
    await queue.refresh();
    await Promise.all([queue.submit("r0", 1), queue.submit("r0", 1)]);
    expect(server.reviewCount("r0")).toBe(1);
    expect(queue.submitted).toBe(1);
    // a repeat after the item already left the queue is a no-op
    expect(await queue.submit("r0", 1)).toBe(false);
    expect(server.reviewCount("r0")).toBe(1);
  });

  it("surfaces a 409 conflict with both labels and supports supersede", async () => {
    const { server, api } = setup();
    const conflicts: ConflictEvent[] = [];
    const queue = new QueueController(api, "a1", { onConflict: (c) => conflicts.push(c) });
    await queue.refresh();
    await queue.submit("r0", 1);

    // the same annotator comes back with a different verdict
    await queue.refresh();
    queue.items.unshift({ record_id: "r0", text: "revisited", dataset: "fixture" });
    const ok = await queue.submit("r0", 0);
    expect(ok).toBe(false);
    expect(conflicts.length).toBe(1);
    expect(conflicts[0].detail.stored_label).toBe(1);
    expect(conflicts[0].detail.attempted_label).toBe(0);
    expect(server.storedLabel("r0", "a1")).toBe(1); // first review stands

    await queue.supersede("r0", 0);
    expect(server.storedLabel("r0", "a1")).toBe(0);
  });
});
