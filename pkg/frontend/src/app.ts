// Wallet application logic, DOM-free so tests can drive it headlessly.
// Every mutation awaits the server's response before the state moves;
// there are no optimistic updates.

import { ApiError, WalletApi } from "./api";
import { render } from "./render";
import { CATEGORY_FIELDS, CategoryField, WalletViewState, initialState, interestsComplete } from "./state";
import type { RegistrationForm } from "./types";
import { clampRating, generateKey } from "./util";

export class WalletApp {
  state: WalletViewState = initialState();

  constructor(private readonly api: WalletApi, private readonly keygen: () => string = generateKey) {}

  html(): string {
    return render(this.state);
  }

  // registration: POST /users, then generate and link an account key

  async register(form: RegistrationForm): Promise<void> {
    this.state.registerError = null;
    const blank = Object.entries(form).find(([, value]) => !value.trim());
    if (blank) {
      this.state.registerError = `${blank[0].replace("_", " ")} must not be empty`;
      return;
    }
    this.state.busy = true;
    try {
      const profile = await this.api.registerUser(form);
      this.state.federationId = profile.unique_id;
      const linked = await this.api.linkKey(profile.unique_id, this.keygen());
      this.state.publicKey = linked.public_key;
      this.state.balance = linked.balance;
      this.state.screen = "interests";
    } catch (error) {
      if (error instanceof ApiError && error.code === "duplicate_unique_id") {
        this.state.registerError = error.message;
      } else {
        this.state.registerError = describe(error);
      }
    } finally {
      this.state.busy = false;
    }
  }

  // interests: sliders clamp to 1..5; submit stays blocked until all four set

  setSlider(field: CategoryField, value: number): void {
    this.state.interestDraft[field] = clampRating(value);
  }

  async saveInterests(): Promise<void> {
    const draft = this.state.interestDraft;
    if (!interestsComplete(draft) || this.state.federationId === null) return;
    this.state.busy = true;
    this.state.screenError = null;
    try {
      await this.api.setInterests(this.state.federationId, {
        charity: draft.charity!,
        education: draft.education!,
        economy: draft.economy!,
        health: draft.health!,
      });
      // read back rather than trusting the local draft
      const profile = await this.api.getUser(this.state.federationId);
      this.state.interestsRecorded = profile.interests !== null;
      await this.openHome();
    } catch (error) {
      this.state.screenError = describe(error);
    } finally {
      this.state.busy = false;
    }
  }

  // navigation targets fetch their data fresh from the gateway

  async openHome(): Promise<void> {
    this.state.screenError = null;
    if (this.state.publicKey !== null) {
      try {
        const account = await this.api.getAccount(this.state.publicKey);
        this.state.balance = account.balance;
      } catch (error) {
        this.state.screenError = describe(error);
      }
    }
    this.state.screen = "home";
  }

  async openSend(): Promise<void> {
    this.state.screenError = null;
    this.state.lastReceipt = null;
    this.state.screen = "send";
  }

  async openHistory(): Promise<void> {
    this.state.screenError = null;
    if (this.state.publicKey !== null) {
      try {
        this.state.history = await this.api.accountHistory(this.state.publicKey);
      } catch (error) {
        this.state.screenError = describe(error);
        this.state.history = [];
      }
    }
    this.state.screen = "history";
  }

  async openVote(): Promise<void> {
    if (this.state.federationId === null) return;
    this.state.screenError = null;
    this.state.voteConfirmation = null;
    try {
      this.state.lastRecommendation = await this.api.recommendations(this.state.federationId);
      this.state.screen = "vote";
    } catch (error) {
      if (error instanceof ApiError && error.code === "interests_unset") {
        // server says onboarding is incomplete; mirror it
        this.state.screen = "interests";
        this.state.screenError = "Record your interests before voting.";
      } else {
        this.state.screenError = describe(error);
        this.state.screen = "vote";
        this.state.lastRecommendation = null;
      }
    }
  }

  async voteFor(destinationKey: string): Promise<void> {
    if (this.state.federationId === null) return;
    this.state.busy = true;
    this.state.screenError = null;
    try {
      this.state.voteConfirmation = await this.api.castVote(this.state.federationId, destinationKey);
    } catch (error) {
      if (error instanceof ApiError && error.code === "interests_unset") {
        this.state.screen = "interests";
        this.state.screenError = "Record your interests before voting.";
      } else {
        this.state.screenError = describe(error);
      }
    } finally {
      this.state.busy = false;
    }
  }

  async send(dst: string, amount: number): Promise<void> {
    if (this.state.publicKey === null) {
      this.state.screenError = "No account key linked.";
      return;
    }
    this.state.busy = true;
    this.state.screenError = null;
    try {
      this.state.lastReceipt = await this.api.submitPayment(this.state.publicKey, dst, amount);
      const account = await this.api.getAccount(this.state.publicKey);
      this.state.balance = account.balance;
    } catch (error) {
      this.state.screenError = describe(error);
    } finally {
      this.state.busy = false;
    }
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.message} (${error.code})`;
  return error instanceof Error ? error.message : String(error);
}

export { CATEGORY_FIELDS };
