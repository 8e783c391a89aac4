/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_inverseview_free: (a: number, b: number) => void;
export const __wbg_profileview_free: (a: number, b: number) => void;
export const __wbg_solutionview_free: (a: number, b: number) => void;
export const harnack: (a: number, b: number) => [number, number, number];
export const inverseview_bound: (a: number) => [number, number];
export const inverseview_t: (a: number) => [number, number];
export const inverseview_u: (a: number) => [number, number];
export const kernelProfile: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const profileview_critical_is_max: (a: number) => [number, number];
export const profileview_critical_t: (a: number) => [number, number];
export const profileview_energy: (a: number) => [number, number];
export const profileview_potential: (a: number) => [number, number];
export const profileview_t: (a: number) => [number, number];
export const solutionview_converged: (a: number) => number;
export const solutionview_iterations: (a: number) => number;
export const solutionview_radius: (a: number) => number;
export const solutionview_residual: (a: number) => number;
export const solutionview_t: (a: number) => [number, number];
export const solutionview_u: (a: number) => [number, number];
export const solve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
