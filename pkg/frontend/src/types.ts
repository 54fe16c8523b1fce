/** Payload shapes of the /api/v1 JSON contract. The UI never derives numbers
 * from these; it renders them as delivered. */

export interface SuggestionView {
  label: 0 | 1;
  visible: boolean;
}

export interface QueueItem {
  record_id: string;
  text: string;
  dataset: string;
  published_at?: string | null;
  keyword_group?: string | null;
  suggestion?: SuggestionView;
}

export interface QueuePayload {
  annotator_id: string;
  items: QueueItem[];
}

export interface ReviewResponse {
  record_id: string;
  annotator_id: string;
  label: 0 | 1;
  status: string;
}

export interface ConflictDetail {
  message: string;
  stored_label: 0 | 1;
  attempted_label: 0 | 1;
}

export interface AgreementPair {
  pair: [string, string] | null;
  n_items: number;
  p_o: number;
  p_e: number;
  kappa: number;
  passes_gate: boolean;
}

export interface AgreementPayload {
  pairs: AgreementPair[];
  undefined_pairs: string[][];
  pooled: AgreementPair | null;
  unresolved: number;
}

export interface AdjudicationCase {
  record_id: string;
  text: string;
  labels: number[];
}

export interface AdjudicationPayload {
  cases: AdjudicationCase[];
}
