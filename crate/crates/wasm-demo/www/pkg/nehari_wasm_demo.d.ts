/* tslint:disable */
/* eslint-disable */

export class InverseView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    bound(): Float64Array;
    t(): Float64Array;
    u(): Float64Array;
}

export class ProfileView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * 1 for a maximum, 0 for a minimum, aligned with `critical_t`.
     */
    critical_is_max(): Uint8Array;
    /**
     * Critical radii, in increasing order.
     */
    critical_t(): Float64Array;
    energy(): Float64Array;
    potential(): Float64Array;
    t(): Float64Array;
}

export class SolutionView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    t(): Float64Array;
    u(): Float64Array;
    readonly converged: boolean;
    readonly iterations: number;
    readonly radius: number;
    readonly residual: number;
}

export function harnack(p: number, bump: number): InverseView;

export function kernelProfile(a2: number, a1: number, a0: number, seed: number, t_max: number, samples: number): ProfileView;

export function solve(p: number, a2: number, a1: number, a0: number, damping: number): SolutionView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_inverseview_free: (a: number, b: number) => void;
    readonly __wbg_profileview_free: (a: number, b: number) => void;
    readonly __wbg_solutionview_free: (a: number, b: number) => void;
    readonly harnack: (a: number, b: number) => [number, number, number];
    readonly inverseview_bound: (a: number) => [number, number];
    readonly inverseview_t: (a: number) => [number, number];
    readonly inverseview_u: (a: number) => [number, number];
    readonly kernelProfile: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly profileview_critical_is_max: (a: number) => [number, number];
    readonly profileview_critical_t: (a: number) => [number, number];
    readonly profileview_energy: (a: number) => [number, number];
    readonly profileview_potential: (a: number) => [number, number];
    readonly profileview_t: (a: number) => [number, number];
    readonly solutionview_converged: (a: number) => number;
    readonly solutionview_iterations: (a: number) => number;
    readonly solutionview_radius: (a: number) => number;
    readonly solutionview_residual: (a: number) => number;
    readonly solutionview_t: (a: number) => [number, number];
    readonly solutionview_u: (a: number) => [number, number];
    readonly solve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
