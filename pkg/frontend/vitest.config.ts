import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    globalSetup: "./tests/globalSetup.ts",
    testTimeout: 15000,
    hookTimeout: 30000,
  },
});
