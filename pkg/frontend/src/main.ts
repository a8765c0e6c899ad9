/** DOM wiring for the explorer.
 *
 * The page flow mirrors the decision-maker loop: create a session from a
 * pasted solution-set document, inspect the drawn network, mark nodes and
 * exclude them, adjust the similarity display range, toggle objective
 * coloring. Everything structural comes back from the service; this file
 * only moves JSON between widgets and the renderer.
 */

import { ServiceError, SessionClient, type StylePatch, type View } from "./api.js";
import { CoalescingLimiter, MutationQueue, StaleGuard } from "./controls.js";
import {
  acceptView,
  clearSelection,
  connectionLost,
  emptyViewModel,
  exclusionBlocked,
  expectedCounts,
  orderedRange,
  serviceFailure,
  toggleSelection,
  type ViewModel,
} from "./model.js";
import { describeViewProblem, renderNetwork, renderPlaceholder } from "./render.js";

export interface ExplorerOptions {
  baseUrl?: string;
  fetchImpl?: (input: string, init?: RequestInit) => Promise<Response>;
  /** Minimum spacing between style requests; 200 ms caps them at 5/s. */
  styleIntervalMs?: number;
  /** Where to fetch the prefill document from; empty string disables it. */
  sampleUrl?: string;
}

export interface ExplorerApp {
  model(): ViewModel;
  sessionId(): string | null;
  refresh(): Promise<void>;
  dispose(): void;
}

interface CreateDocument {
  solution_set?: {
    objectives?: { name?: string }[];
    solutions?: { id?: number; objectives?: number[] }[];
  };
}

export function mountExplorer(root: HTMLElement, options: ExplorerOptions = {}): ExplorerApp {
  const doc = root.ownerDocument;
  const client = new SessionClient(options.baseUrl ?? "", options.fetchImpl);
  const guard = new StaleGuard();

  let vm = emptyViewModel();
  let sid: string | null = null;
  let objectiveNames: string[] = [];
  let objectiveValues = new Map<number, readonly number[]>();

  root.innerHTML = `
    <div class="explorer">
      <div id="banner" class="banner" hidden></div>
      <div id="status" data-status="idle">no session</div>
      <section id="setup">
        <textarea id="create-body" rows="8" spellcheck="false"
          placeholder='{"solution_set": ..., "metric": ...}'></textarea>
        <button id="create">Create session</button>
      </section>
      <section id="controls" hidden>
        <label>range low
          <input id="s-lo" type="number" step="0.01" min="0" max="1">
        </label>
        <label>range high
          <input id="s-hi" type="number" step="0.01" min="0" max="1">
        </label>
        <label>
          <input id="coloring" type="checkbox" checked> objective colors
        </label>
        <button id="exclude">Exclude selected</button>
        <button id="clear-selection">Clear selection</button>
        <button id="reset">Reset</button>
        <span id="selection-note"></span>
      </section>
      <div id="network"></div>
    </div>`;

  const el = <T extends HTMLElement>(id: string): T => {
    const found = root.querySelector<T>(`#${id}`);
    if (!found) {
      throw new Error(`explorer markup is missing #${id}`);
    }
    return found;
  };

  const banner = el<HTMLDivElement>("banner");
  const status = el<HTMLDivElement>("status");
  const createBody = el<HTMLTextAreaElement>("create-body");
  const createButton = el<HTMLButtonElement>("create");
  const controls = el<HTMLElement>("controls");
  const sLoInput = el<HTMLInputElement>("s-lo");
  const sHiInput = el<HTMLInputElement>("s-hi");
  const coloringInput = el<HTMLInputElement>("coloring");
  const excludeButton = el<HTMLButtonElement>("exclude");
  const clearButton = el<HTMLButtonElement>("clear-selection");
  const resetButton = el<HTMLButtonElement>("reset");
  const selectionNote = el<HTMLSpanElement>("selection-note");
  const network = el<HTMLDivElement>("network");

  const onAsyncError = (error: unknown) => {
    vm =
      error instanceof ServiceError
        ? serviceFailure(vm, error.message)
        : connectionLost(vm);
    paint();
  };

  const queue = new MutationQueue(onAsyncError);
  const limiter = new CoalescingLimiter<StylePatch>(
    options.styleIntervalMs ?? 200,
    (patch) => {
      queue.submit(async () => {
        if (sid) {
          await client.restyle(sid, patch);
          await refresh();
        }
      });
    },
  );

  function paint(): void {
    banner.hidden = vm.banner === null;
    banner.textContent = vm.banner ?? "";
    status.dataset.status = vm.status;
    status.textContent =
      vm.status === "idle"
        ? "no session"
        : vm.status === "connected"
          ? `connected, ${expectedCounts(vm).nodes} nodes / ${expectedCounts(vm).edges} edges`
          : "service unreachable";

    const usable = vm.status === "connected" && sid !== null;
    controls.hidden = sid === null;
    for (const widget of [sLoInput, sHiInput, coloringInput, excludeButton, clearButton, resetButton]) {
      widget.disabled = !usable;
    }
    if (doc.activeElement !== sLoInput) {
      sLoInput.value = vm.sLo.toFixed(2);
    }
    if (doc.activeElement !== sHiInput) {
      sHiInput.value = vm.sHi.toFixed(2);
    }
    coloringInput.checked = vm.coloring;

    const blocked = exclusionBlocked(vm);
    selectionNote.textContent = blocked ?? `${vm.selected.size} marked for exclusion`;
    if (usable) {
      excludeButton.disabled = vm.selected.size === 0 || blocked !== null;
    }

    if (!vm.view) {
      network.innerHTML = `<div class="placeholder">create a session to see its network</div>`;
      return;
    }
    const problem = describeViewProblem(vm.view);
    if (problem) {
      vm = serviceFailure(vm, problem);
      banner.hidden = false;
      banner.textContent = problem;
      network.innerHTML = renderPlaceholder(problem);
      return;
    }
    network.innerHTML = renderNetwork(vm.view, {
      selected: vm.selected,
      objectiveValues,
      objectiveNames,
    });
  }

  async function refresh(): Promise<void> {
    if (!sid) {
      return;
    }
    const ticket = guard.issue();
    try {
      const view: View = await client.view(sid);
      if (!guard.isCurrent(ticket)) {
        return;
      }
      vm = acceptView(vm, view);
    } catch (error) {
      onAsyncError(error);
      return;
    }
    paint();
  }

  function rememberObjectives(parsed: CreateDocument): void {
    const sset = parsed.solution_set;
    objectiveNames = (sset?.objectives ?? []).map((o, i) => o.name ?? `f${i + 1}`);
    objectiveValues = new Map(
      (sset?.solutions ?? [])
        .filter((s) => typeof s.id === "number" && Array.isArray(s.objectives))
        .map((s) => [s.id as number, s.objectives as number[]]),
    );
  }

  createButton.addEventListener("click", () => {
    let parsed: unknown;
    try {
      parsed = JSON.parse(createBody.value);
    } catch (error) {
      vm = serviceFailure(vm, `input is not valid JSON: ${(error as Error).message}`);
      paint();
      return;
    }
    queue.submit(async () => {
      sid = await client.createSession(parsed);
      rememberObjectives(parsed as CreateDocument);
      vm = emptyViewModel();
      await refresh();
    });
  });

  network.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const group = target?.closest?.("[data-node-id]");
    if (!group) {
      return;
    }
    const id = Number(group.getAttribute("data-node-id"));
    vm = toggleSelection(vm, id);
    paint();
  });

  excludeButton.addEventListener("click", () => {
    const blocked = exclusionBlocked(vm);
    if (blocked) {
      vm = serviceFailure(vm, blocked);
      paint();
      return;
    }
    const ids = [...vm.selected];
    if (ids.length === 0 || !sid) {
      return; // nothing marked: no request at all
    }
    queue.submit(async () => {
      await client.exclude(sid!, ids);
      vm = clearSelection(vm);
      await refresh();
    });
  });

  clearButton.addEventListener("click", () => {
    vm = clearSelection(vm);
    paint();
  });

  resetButton.addEventListener("click", () => {
    if (!sid) {
      return;
    }
    queue.submit(async () => {
      await client.reset(sid!);
      vm = clearSelection(vm);
      await refresh();
    });
  });

  const pushStyle = () => {
    limiter.push({
      s_lo: vm.sLo,
      s_hi: vm.sHi,
      objective_coloring: vm.coloring,
    });
  };

  sLoInput.addEventListener("input", () => {
    const value = Number(sLoInput.value);
    if (!Number.isFinite(value)) {
      return;
    }
    const [lo, hi] = orderedRange(value, vm.sHi, "lo");
    vm = { ...vm, sLo: lo, sHi: hi };
    paint();
    pushStyle();
  });

  sHiInput.addEventListener("input", () => {
    const value = Number(sHiInput.value);
    if (!Number.isFinite(value)) {
      return;
    }
    const [lo, hi] = orderedRange(vm.sLo, value, "hi");
    vm = { ...vm, sLo: lo, sHi: hi };
    paint();
    pushStyle();
  });

  coloringInput.addEventListener("change", () => {
    vm = { ...vm, coloring: coloringInput.checked };
    paint();
    pushStyle();
  });

  const sampleUrl = options.sampleUrl ?? "./sample.json";
  if (sampleUrl) {
    void (async () => {
      try {
        const response = await fetch(sampleUrl);
        if (response.ok && !createBody.value) {
          createBody.value = JSON.stringify(await response.json(), null, 1);
        }
      } catch {
        // sample document is a convenience; its absence is fine
      }
    })();
  }

  paint();

  return {
    model: () => vm,
    sessionId: () => sid,
    refresh,
    dispose: () => limiter.dispose(),
  };
}
