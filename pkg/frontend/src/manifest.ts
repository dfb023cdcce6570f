// Route manifest, mirrored from the gateway's bundled route_manifest.json.
// The client resolves every request path through this table; the live test
// suite asserts it matches GET /v1/manifest byte for byte.

export interface RouteEntry {
  name: string;
  method: "GET" | "POST" | "PUT";
  path: string;
}

export interface RouteManifest {
  version: string;
  base_path: string;
  routes: RouteEntry[];
}

export const ROUTE_MANIFEST: RouteManifest = {
  version: "v1",
  base_path: "/v1",
  routes: [
    { name: "register_user", method: "POST", path: "/v1/users" },
    { name: "set_interests", method: "PUT", path: "/v1/users/{id}/interests" },
    { name: "link_key", method: "POST", path: "/v1/users/{id}/key" },
    { name: "get_user", method: "GET", path: "/v1/users/{id}" },
    { name: "list_entities", method: "GET", path: "/v1/entities" },
    { name: "recommendations", method: "GET", path: "/v1/recommendations/{id}" },
    { name: "cast_vote", method: "POST", path: "/v1/votes" },
    { name: "submit_payment", method: "POST", path: "/v1/payments" },
    { name: "get_account", method: "GET", path: "/v1/ledger/accounts/{key}" },
    { name: "account_history", method: "GET", path: "/v1/ledger/accounts/{key}/history" },
    { name: "run_inflation", method: "POST", path: "/v1/inflation/run" },
    { name: "manifest", method: "GET", path: "/v1/manifest" },
  ],
};

export function route(name: string): RouteEntry {
  const entry = ROUTE_MANIFEST.routes.find((r) => r.name === name);
  if (!entry) throw new Error(`route not in manifest: ${name}`);
  return entry;
}

export function routePath(name: string, params: Record<string, string> = {}): string {
  let path = route(name).path;
  for (const [key, value] of Object.entries(params)) {
    path = path.replace(`{${key}}`, encodeURIComponent(value));
  }
  if (path.includes("{")) throw new Error(`unresolved path params in ${path}`);
  return path;
}
