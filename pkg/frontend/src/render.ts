// Screen renderers: state in, HTML string out. Every number shown here came
// from a /v1 response; nothing is computed or re-sorted client side. The
// vote list in particular renders candidates in exactly the order the API
// returned them.

import { CATEGORY_FIELDS, WalletViewState, interestsComplete } from "./state";
import { escapeHtml } from "./util";

function errorBanner(message: string | null): string {
  if (!message) return "";
  return `<div class="error" data-role="screen-error">${escapeHtml(message)}</div>`;
}

function nav(state: WalletViewState): string {
  if (state.federationId === null) return "";
  const links = [
    ["home", "Home"],
    ["send", "Send"],
    ["history", "History"],
    ["vote", "Vote"],
  ] as const;
  const items = links
    .map(([screen, label]) =>
      `<button data-action="nav" data-screen="${screen}"${state.screen === screen ? ' class="active"' : ""}>${label}</button>`)
    .join("");
  return `<nav>${items}<span class="who">${escapeHtml(state.federationId)}</span></nav>`;
}

export function renderRegister(state: WalletViewState): string {
  const fields = [
    ["name", "Name"],
    ["mobile", "Mobile number"],
    ["email", "Email"],
    ["national_code", "National code"],
    ["unique_id", "Unique ID"],
  ] as const;
  const inputs = fields
    .map(([field, label]) => {
      const inline = field === "unique_id" && state.registerError
        ? `<span class="field-error" data-role="register-error">${escapeHtml(state.registerError)}</span>`
        : "";
      return `<label>${label}<input name="${field}" data-field="${field}">${inline}</label>`;
    })
    .join("");
  return `
    <section data-screen="register">
      <h1>Create your wallet</h1>
      <form data-action="register-form">
        ${inputs}
        <button type="submit" ${state.busy ? "disabled" : ""}>Register</button>
      </form>
    </section>`;
}

export function renderInterests(state: WalletViewState): string {
  const sliders = CATEGORY_FIELDS.map((field) => {
    const value = state.interestDraft[field];
    const display = value === null ? "&ndash;" : String(value);
    return `
      <label class="slider-row">
        <span class="cat">${field}</span>
        <input type="range" min="1" max="5" step="1" value="${value ?? 3}"
               data-action="interest-slider" data-field="${field}">
        <span class="value" data-role="value-${field}">${display}</span>
      </label>`;
  }).join("");
  const ready = interestsComplete(state.interestDraft);
  return `
    <section data-screen="interests">
      <h1>Rate your interest, 1 to 5</h1>
      ${errorBanner(state.screenError)}
      ${sliders}
      <button data-action="save-interests" ${ready && !state.busy ? "" : "disabled"}>Save interests</button>
    </section>`;
}

export function renderHome(state: WalletViewState): string {
  const balance = state.balance === null ? "&ndash;" : String(state.balance);
  return `
    <section data-screen="home">
      ${nav(state)}
      <h1>Wallet</h1>
      ${errorBanner(state.screenError)}
      <p>Account <code>${escapeHtml(state.publicKey ?? "not linked")}</code></p>
      <p>Balance <strong data-role="balance">${balance}</strong></p>
      <div class="actions">
        <button data-action="nav" data-screen="send">Send money</button>
        <button data-action="nav" data-screen="history">Transaction history</button>
        <button data-action="nav" data-screen="vote">Collective vote</button>
      </div>
    </section>`;
}

export function renderSend(state: WalletViewState): string {
  const receipt = state.lastReceipt
    ? `<p class="ok" data-role="receipt">Sent ${state.lastReceipt.amount} (fee ${state.lastReceipt.fee}), receipt #${state.lastReceipt.sequence}</p>`
    : "";
  return `
    <section data-screen="send">
      ${nav(state)}
      <h1>Send money</h1>
      ${errorBanner(state.screenError)}
      ${receipt}
      <form data-action="send-form">
        <label>Destination key<input data-field="dst"></label>
        <label>Amount<input data-field="amount" type="number" min="1"></label>
        <button type="submit" ${state.busy ? "disabled" : ""}>Send</button>
      </form>
    </section>`;
}

export function renderHistory(state: WalletViewState): string {
  const rows = state.history
    .map((r) => `<tr><td>${r.sequence}</td><td>${r.kind}</td><td>${escapeHtml(r.src ?? "pool")}</td>` +
      `<td>${escapeHtml(r.dst)}</td><td>${r.amount}</td><td>${r.fee}</td></tr>`)
    .join("");
  const table = state.history.length
    ? `<table><thead><tr><th>#</th><th>kind</th><th>from</th><th>to</th><th>amount</th><th>fee</th></tr></thead>
       <tbody>${rows}</tbody></table>`
    : "<p>No transactions yet.</p>";
  return `
    <section data-screen="history">
      ${nav(state)}
      <h1>Transaction history</h1>
      ${errorBanner(state.screenError)}
      ${table}
    </section>`;
}

export function renderVote(state: WalletViewState): string {
  if (state.voteConfirmation) {
    const c = state.voteConfirmation;
    return `
      <section data-screen="vote">
        ${nav(state)}
        <h1>Vote recorded</h1>
        <p class="ok" data-role="vote-confirmation">
          Vote #${c.sequence} for <code>${escapeHtml(c.destination_key)}</code>
          ${c.ledger_update ? "(inflation destination updated)" : "(no ledger account linked)"}
        </p>
        <button data-action="vote-again">Back to recommendations</button>
      </section>`;
  }
  const rec = state.lastRecommendation;
  const rows = rec
    ? rec.candidates
        .map((c) => `
        <li>
          <button data-action="vote-for" data-key="${escapeHtml(c.destination_key)}">
            <span class="name">${escapeHtml(c.display_name)}</span>
            <code>${escapeHtml(c.destination_key)}</code>
            <span class="score">${c.normalized_score}</span>
          </button>
        </li>`)
        .join("")
    : "";
  return `
    <section data-screen="vote">
      ${nav(state)}
      <h1>Choose a destination</h1>
      ${errorBanner(state.screenError)}
      <ol class="recommendations" data-role="recommendations">${rows}</ol>
      <form data-action="manual-vote-form">
        <label>Or enter a public key directly
          <input data-field="manual-key" placeholder="destination public key">
        </label>
        <button type="submit" ${state.busy ? "disabled" : ""}>Vote for this key</button>
      </form>
    </section>`;
}

export function render(state: WalletViewState): string {
  switch (state.screen) {
    case "register":
      return renderRegister(state);
    case "interests":
      return renderInterests(state);
    case "home":
      return renderHome(state);
    case "send":
      return renderSend(state);
    case "history":
      return renderHistory(state);
    case "vote":
      return renderVote(state);
  }
}

// Order oracle for tests: the destination keys exactly as rendered, top to
// bottom.
export function renderedVoteOrder(html: string): string[] {
  const matches = html.matchAll(/data-action="vote-for" data-key="([^"]+)"/g);
  return Array.from(matches, (m) => m[1] as string);
}
