// Wire types for the /v1 gateway.

export interface UserProfile {
  unique_id: string;
  name: string;
  mobile: string;
  email: string;
  national_code: string;
  public_key: string | null;
  interests: Record<string, number> | null;
}

export interface Entity {
  name: string;
  public_key: string;
  category: number;
  category_label: string;
  priority: number;
  size: number;
}

export interface Candidate {
  destination_key: string;
  display_name: string;
  category: number;
  normalized_score: number;
  collab_score: number;
  context_score: number;
}

export interface RecommendationResponse {
  federation_id: string;
  candidates: Candidate[];
}

export interface VoteResponse {
  federation_id: string;
  destination_key: string;
  sequence: number;
  ledger_update: boolean;
}

export interface Receipt {
  sequence: number;
  kind: string;
  src: string | null;
  dst: string;
  amount: number;
  fee: number;
}

export interface AccountResponse {
  public_key: string;
  balance: number;
  inflation_destination: string | null;
}

export interface LinkKeyResponse {
  public_key: string;
  balance: number;
}

export interface RegistrationForm {
  unique_id: string;
  name: string;
  mobile: string;
  email: string;
  national_code: string;
}
