// DOM wiring: fetch the session graph, render it, forward clicks on
// mutable faces to the service, and keep the history panel in sync.

import { ApiClient, ApiClientError } from "./client.js";
import { renderHistory, renderSvg } from "./render.js";
import { buildViewModel, parseLabel } from "./viewmodel.js";
import type { GraphPayload } from "./types.js";

const client = new ApiClient("");

const canvas = document.getElementById("canvas") as HTMLElement;
const historyBox = document.getElementById("history") as HTMLElement;
const toast = document.getElementById("toast") as HTMLElement;
const form = document.getElementById("reset-form") as HTMLFormElement;
const orbitBox = document.getElementById("orbit") as HTMLElement;

function showToast(message: string): void {
  toast.textContent = message;
  toast.classList.add("visible");
  window.setTimeout(() => toast.classList.remove("visible"), 2600);
}

function apply(payload: GraphPayload): void {
  const vm = buildViewModel(payload);
  canvas.innerHTML = renderSvg(vm);
  historyBox.innerHTML = renderHistory(vm.history);
  document.body.dataset.busy = "false";
}

async function refreshOrbit(): Promise<void> {
  try {
    const data = await client.orbit();
    orbitBox.textContent = `orbit size ${data.orbit.length}`;
  } catch {
    orbitBox.textContent = "";
  }
}

canvas.addEventListener("click", async (event) => {
  const target = (event.target as Element).closest("[data-label]");
  if (!target || client.busy) {
    return;
  }
  if (target.getAttribute("data-mutable") !== "true") {
    return;
  }
  document.body.dataset.busy = "true";
  try {
    apply(await client.mutate(parseLabel(target.getAttribute("data-label") ?? "")));
  } catch (err) {
    document.body.dataset.busy = "false";
    showToast(err instanceof ApiClientError ? `${err.code}: ${err.message}` : String(err));
  }
});

form.addEventListener("submit", async (event) => {
  event.preventDefault();
  const data = new FormData(form);
  try {
    apply(
      await client.reset(
        String(data.get("family") ?? "ch"),
        Number(data.get("k") ?? 3),
        Number(data.get("n") ?? 6),
        {
          shift: Number(data.get("shift") ?? 0),
          reflected: data.get("reflected") === "on",
        },
      ),
    );
    await refreshOrbit();
  } catch (err) {
    showToast(err instanceof ApiClientError ? `${err.code}: ${err.message}` : String(err));
  }
});

client
  .graph()
  .then((payload) => {
    apply(payload);
    return refreshOrbit();
  })
  .catch((err) => showToast(`cannot reach the service: ${err}`));
