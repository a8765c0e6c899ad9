/** Explorer view-model: the latest fetched view plus pure UI state.
 *
 * All transitions are pure functions over this record so they can be tested
 * without a DOM or a running service.
 */

import type { View } from "./api.js";

export type ConnectionStatus = "idle" | "connected" | "disconnected";

export interface ViewModel {
  view: View | null;
  /** Node ids marked for the next exclusion round. */
  selected: ReadonlySet<number>;
  sLo: number;
  sHi: number;
  coloring: boolean;
  status: ConnectionStatus;
  banner: string | null;
}

export function emptyViewModel(): ViewModel {
  return {
    view: null,
    selected: new Set(),
    sLo: 0,
    sHi: 1,
    coloring: true,
    status: "idle",
    banner: null,
  };
}

/** Adopt a freshly fetched view: the service is the source of truth for the
 * slider values and the coloring flag, and stale selections are dropped. */
export function acceptView(vm: ViewModel, view: View): ViewModel {
  const alive = new Set(view.nodes.map((n) => n.id));
  const selected = new Set([...vm.selected].filter((id) => alive.has(id)));
  return {
    view,
    selected,
    sLo: view.meta.style.s_lo,
    sHi: view.meta.style.s_hi,
    coloring: view.meta.style.objective_coloring,
    status: "connected",
    banner: null,
  };
}

export function toggleSelection(vm: ViewModel, id: number): ViewModel {
  if (!vm.view || !vm.view.nodes.some((n) => n.id === id)) {
    return vm;
  }
  const selected = new Set(vm.selected);
  if (selected.has(id)) {
    selected.delete(id);
  } else {
    selected.add(id);
  }
  return { ...vm, selected };
}

export function clearSelection(vm: ViewModel): ViewModel {
  return vm.selected.size === 0 ? vm : { ...vm, selected: new Set() };
}

/** Why the pending exclusion cannot be sent, or null when it can.
 * An empty selection is not an error; it just means there is nothing to do. */
export function exclusionBlocked(vm: ViewModel): string | null {
  if (!vm.view || vm.selected.size === 0) {
    return null;
  }
  const remaining = vm.view.nodes.length - vm.selected.size;
  if (remaining < 2) {
    return `cannot exclude ${vm.selected.size} of ${vm.view.nodes.length} nodes: at least 2 must remain`;
  }
  return null;
}

export function serviceFailure(vm: ViewModel, message: string): ViewModel {
  return { ...vm, banner: message };
}

export function connectionLost(vm: ViewModel): ViewModel {
  return { ...vm, status: "disconnected", banner: "connection to the service lost" };
}

/** Keep lo strictly below hi when one endpoint moves; the untouched endpoint
 * gives way so the pair always stays a valid display range. */
export function orderedRange(
  lo: number,
  hi: number,
  moved: "lo" | "hi",
): [number, number] {
  const gap = 0.01;
  if (lo < hi) {
    return [lo, hi];
  }
  return moved === "lo" ? [lo, lo + gap] : [hi - gap, hi];
}

/** Counts the rendered network must show (the core display invariant). */
export function expectedCounts(vm: ViewModel): { nodes: number; edges: number } {
  if (!vm.view) {
    return { nodes: 0, edges: 0 };
  }
  return { nodes: vm.view.nodes.length, edges: vm.view.edges.length };
}
