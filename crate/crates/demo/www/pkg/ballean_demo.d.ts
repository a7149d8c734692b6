/* tslint:disable */
/* eslint-disable */

/**
 * `E_r[x] ∩ [0, window)` for every ground point of the window.
 */
export function ball_map(presentation: string, r: number, window: number): string;

/**
 * Names the page offers in its menus.
 */
export function catalogue(): string;

/**
 * Values of `f` and `diam f(E_r[x])` along the window, with the
 * macro-uniform and slow-oscillation verdicts up to scale `r`.
 */
export function oscillation_profile(presentation: string, _function: string, r: number, epsilon: number, window: number): string;

/**
 * Closeness, linkness and asymptotic disjointness of two subsets, named
 * or written inline such as `arith(0,3)`.
 */
export function relation_report(presentation: string, a: string, b: string, rmax: number, window: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly ball_map: (a: number, b: number, c: number, d: number) => [number, number];
    readonly catalogue: () => [number, number];
    readonly oscillation_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly relation_report: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
