/** Review-queue controller with optimistic submission.
 *
 * submit() removes the item from the queue immediately, sends the review in
 * the background, and reinserts the item at its old position if the server
 * rejects it. The server is idempotent per assignment, so retrying after a
 * network failure is safe; a 409 conflict is surfaced to the conflict handler
 * instead of being retried.
 */

import { ApiClient, ApiError } from "./api.js";
import type { ConflictDetail, QueueItem } from "./types.js";

export interface ConflictEvent {
  item: QueueItem;
  attempted: 0 | 1;
  detail: ConflictDetail;
}

export interface QueueEvents {
  onChange?: () => void;
  onConflict?: (event: ConflictEvent) => void;
  onError?: (error: Error) => void;
}

export class QueueController {
  readonly annotatorId: string;
  items: QueueItem[] = [];
  submitted = 0;
  private api: ApiClient;
  private events: QueueEvents;
  private inFlight = new Set<string>();

  constructor(api: ApiClient, annotatorId: string, events: QueueEvents = {}) {
    this.api = api;
    this.annotatorId = annotatorId;
    this.events = events;
  }

  async refresh(): Promise<void> {
    this.items = await this.api.fetchQueue(this.annotatorId);
    this.events.onChange?.();
  }

  get current(): QueueItem | undefined {
    return this.items[0];
  }

  /** Optimistically submit a review for one queued record. */
  async submit(recordId: string, label: 0 | 1, note?: string): Promise<boolean> {
    if (this.inFlight.has(recordId)) return false; // double-click guard
    const index = this.items.findIndex((item) => item.record_id === recordId);
    if (index === -1) return false;
    const [item] = this.items.splice(index, 1);
    this.inFlight.add(recordId);
    this.events.onChange?.();
    try {
      await this.api.submitReview(recordId, label, { note });
      this.submitted += 1;
      this.events.onChange?.();
      return true;
    } catch (error) {
      this.items.splice(Math.min(index, this.items.length), 0, item); // roll back
      this.events.onChange?.();
      if (error instanceof ApiError) {
        const conflict = error.conflict();
        if (conflict) {
          this.events.onConflict?.({ item, attempted: label, detail: conflict });
          return false;
        }
      }
      this.events.onError?.(error as Error);
      return false;
    } finally {
      this.inFlight.delete(recordId);
    }
  }

  /** Explicit correction after a conflict dialog; keeps the audit trail server-side. */
  async supersede(recordId: string, label: 0 | 1): Promise<void> {
    await this.api.submitReview(recordId, label, { supersede: true });
    this.items = this.items.filter((item) => item.record_id !== recordId);
    this.submitted += 1;
    this.events.onChange?.();
  }
}
