// Typed client over the /v1 gateway, paths resolved through the manifest.

import { ROUTE_MANIFEST, RouteManifest, route, routePath } from "./manifest";
import type {
  AccountResponse,
  Entity,
  LinkKeyResponse,
  Receipt,
  RecommendationResponse,
  RegistrationForm,
  UserProfile,
  VoteResponse,
} from "./types";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

export class WalletApi {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(routeName: string, options: {
    params?: Record<string, string>;
    query?: Record<string, string>;
    body?: unknown;
  } = {}): Promise<T> {
    const { method } = route(routeName);
    let url = this.baseUrl + routePath(routeName, options.params ?? {});
    if (options.query) {
      url += "?" + new URLSearchParams(options.query).toString();
    }
    const response = await fetch(url, {
      method,
      headers: options.body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: options.body !== undefined ? JSON.stringify(options.body) : undefined,
    });
    if (!response.ok) {
      let code = "error";
      let message = response.statusText;
      try {
        const payload = await response.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, response.status);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  manifest(): Promise<RouteManifest> {
    return this.request("manifest");
  }

  registerUser(form: RegistrationForm): Promise<UserProfile> {
    return this.request("register_user", { body: form });
  }

  getUser(id: string): Promise<UserProfile> {
    return this.request("get_user", { params: { id } });
  }

  linkKey(id: string, publicKey: string): Promise<LinkKeyResponse> {
    return this.request("link_key", { params: { id }, body: { public_key: publicKey } });
  }

  setInterests(id: string, ratings: { charity: number; education: number; economy: number; health: number }): Promise<void> {
    return this.request("set_interests", { params: { id }, body: ratings });
  }

  listEntities(): Promise<Entity[]> {
    return this.request("list_entities");
  }

  recommendations(id: string): Promise<RecommendationResponse> {
    return this.request("recommendations", { params: { id } });
  }

  castVote(federationId: string, destinationKey: string): Promise<VoteResponse> {
    return this.request("cast_vote", {
      body: { federation_id: federationId, destination_key: destinationKey },
    });
  }

  submitPayment(src: string, dst: string, amount: number): Promise<Receipt> {
    return this.request("submit_payment", { body: { src, dst, amount } });
  }

  getAccount(key: string): Promise<AccountResponse> {
    return this.request("get_account", { params: { key } });
  }

  accountHistory(key: string): Promise<Receipt[]> {
    return this.request("account_history", { params: { key } });
  }
}

export { ROUTE_MANIFEST };
