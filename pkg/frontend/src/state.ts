// Wallet view state. The vote screen is reachable only once interests are
// recorded; the server enforces that with 409 interests_unset and the UI
// mirrors it by redirecting back to the interests screen.

import type { Entity, Receipt, RecommendationResponse, VoteResponse } from "./types";

export type Screen = "register" | "interests" | "home" | "send" | "history" | "vote";

export const CATEGORY_FIELDS = ["charity", "education", "economy", "health"] as const;
export type CategoryField = (typeof CATEGORY_FIELDS)[number];

export interface InterestDraft {
  charity: number | null;
  education: number | null;
  economy: number | null;
  health: number | null;
}

export interface WalletViewState {
  screen: Screen;
  federationId: string | null;
  publicKey: string | null;
  balance: number | null;
  entities: Entity[];
  lastRecommendation: RecommendationResponse | null;
  interestDraft: InterestDraft;
  interestsRecorded: boolean;
  registerError: string | null;
  screenError: string | null;
  voteConfirmation: VoteResponse | null;
  lastReceipt: Receipt | null;
  history: Receipt[];
  busy: boolean;
}

export function initialState(): WalletViewState {
  return {
    screen: "register",
    federationId: null,
    publicKey: null,
    balance: null,
    entities: [],
    lastRecommendation: null,
    interestDraft: { charity: null, education: null, economy: null, health: null },
    interestsRecorded: false,
    registerError: null,
    screenError: null,
    voteConfirmation: null,
    lastReceipt: null,
    history: [],
    busy: false,
  };
}

export function interestsComplete(draft: InterestDraft): boolean {
  return CATEGORY_FIELDS.every((field) => draft[field] !== null);
}
