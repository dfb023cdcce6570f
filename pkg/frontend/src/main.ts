// DOM bootstrap: render into #app and delegate events to the WalletApp.

import { WalletApi } from "./api";
import { WalletApp } from "./app";
import type { CategoryField, Screen } from "./state";
import type { RegistrationForm } from "./types";

const api = new WalletApi("");
const app = new WalletApp(api);
const root = document.querySelector<HTMLElement>("#app");

function paint(): void {
  if (root) root.innerHTML = app.html();
}

function formValue(form: HTMLElement, field: string): string {
  const input = form.querySelector<HTMLInputElement>(`[data-field="${field}"]`);
  return input ? input.value : "";
}

async function dispatchClick(target: HTMLElement): Promise<boolean> {
  const actionEl = target.closest<HTMLElement>("[data-action]");
  if (!actionEl) return false;
  switch (actionEl.dataset.action) {
    case "nav": {
      const screen = actionEl.dataset.screen as Screen;
      if (screen === "home") await app.openHome();
      else if (screen === "send") await app.openSend();
      else if (screen === "history") await app.openHistory();
      else if (screen === "vote") await app.openVote();
      return true;
    }
    case "vote-for":
      await app.voteFor(actionEl.dataset.key ?? "");
      return true;
    case "vote-again":
      await app.openVote();
      return true;
    case "save-interests":
      await app.saveInterests();
      return true;
    default:
      return false;
  }
}

document.addEventListener("click", (event) => {
  void dispatchClick(event.target as HTMLElement).then((handled) => {
    if (handled) paint();
  });
});

document.addEventListener("input", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.dataset.action === "interest-slider") {
    app.setSlider(input.dataset.field as CategoryField, Number(input.value));
    paint();
  }
});

document.addEventListener("submit", (event) => {
  const form = event.target as HTMLElement;
  const action = form.dataset.action;
  if (!action) return;
  event.preventDefault();
  void (async () => {
    if (action === "register-form") {
      const body: RegistrationForm = {
        unique_id: formValue(form, "unique_id"),
        name: formValue(form, "name"),
        mobile: formValue(form, "mobile"),
        email: formValue(form, "email"),
        national_code: formValue(form, "national_code"),
      };
      await app.register(body);
    } else if (action === "send-form") {
      await app.send(formValue(form, "dst"), Number(formValue(form, "amount")));
    } else if (action === "manual-vote-form") {
      await app.voteFor(formValue(form, "manual-key"));
    }
    paint();
  })();
});

paint();
