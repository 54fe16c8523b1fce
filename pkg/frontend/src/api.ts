/** Thin typed client for the workbench HTTP API.
 *
 * Every call authenticates with the annotator token header. Failures raise
 * ApiError carrying the HTTP status and the server's detail payload, which the
 * review flow inspects for 409 conflicts.
 */

import type {
  AdjudicationPayload,
  AgreementPayload,
  ConflictDetail,
  QueueItem,
  QueuePayload,
  ReviewResponse,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(typeof detail === "string" ? detail : `HTTP ${status}`);
    this.status = status;
    this.detail = detail;
  }

  conflict(): ConflictDetail | null {
    if (this.status !== 409) return null;
    return this.detail as ConflictDetail;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private baseUrl: string;
  private token: string;
  private fetchImpl: FetchLike;

  constructor(baseUrl: string, token: string, fetchImpl: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.token = token;
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: {
        "Content-Type": "application/json",
        "X-Annotator-Token": this.token,
      },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, payload?.detail ?? payload);
    }
    return payload as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/api/v1/health");
  }

  async fetchQueue(annotatorId: string): Promise<QueueItem[]> {
    const payload = await this.request<QueuePayload>("GET", `/api/v1/queue/${annotatorId}`);
    return payload.items;
  }

  submitReview(
    recordId: string,
    label: 0 | 1,
    options: { note?: string; supersede?: boolean } = {},
  ): Promise<ReviewResponse> {
    return this.request("POST", "/api/v1/reviews", {
      record_id: recordId,
      label,
      note: options.note ?? null,
      supersede: options.supersede ?? false,
    });
  }

  fetchAgreement(): Promise<AgreementPayload> {
    return this.request("GET", "/api/v1/agreement");
  }

  fetchAdjudications(): Promise<AdjudicationPayload> {
    return this.request("GET", "/api/v1/adjudications");
  }
}
