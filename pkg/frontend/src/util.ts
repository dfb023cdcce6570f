export const RATING_MIN = 1;
export const RATING_MAX = 5;

// Interest ratings are integers 1..5; anything else snaps into range.
export function clampRating(value: number): number {
  if (Number.isNaN(value)) return RATING_MIN;
  return Math.min(RATING_MAX, Math.max(RATING_MIN, Math.round(value)));
}

// Desk-scale stand-in for key generation: an opaque random account id.
export function generateKey(rng: () => number = Math.random): string {
  const alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";
  let key = "G";
  for (let i = 0; i < 15; i++) {
    key += alphabet[Math.floor(rng() * alphabet.length)];
  }
  return key;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}
