/* tslint:disable */
/* eslint-disable */

/**
 * Decimated trace plus summary statistics.
 */
export class RunView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    eps(): Float64Array;
    t(): Float64Array;
    x_act(): Float64Array;
    x_ref(): Float64Array;
    y_act(): Float64Array;
    y_ref(): Float64Array;
    readonly final_max: number;
    readonly final_rms: number;
    readonly full_max: number;
}

/**
 * Final-revolution RMS contour error for `count` coupling gains evenly
 * spaced over `[0, k_d_max]`. Unstable gains give infinity.
 */
export function coupling_sweep(path: string, k_p: number, k_i: number, k_d_max: number, count: number): Float64Array;

/**
 * Contour error of a stage displaced by `(dx, dy)` from the command point
 * at polar angle `phi_deg` on a centered circle of `radius`. The axial
 * errors are `(-dx, -dy)`.
 *
 * Returns `[exact, first_order, second_order, eps_x, eps_y]`.
 */
export function probe(radius: number, phi_deg: number, dx: number, dy: number): Float64Array;

/**
 * Runs path `"a"` or `"b"` with gains shared by both axes.
 */
export function simulate(path: string, k_p: number, k_i: number, k_d: number, coupling: boolean): RunView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_runview_free: (a: number, b: number) => void;
    readonly coupling_sweep: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly probe: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly runview_eps: (a: number) => [number, number];
    readonly runview_final_max: (a: number) => number;
    readonly runview_final_rms: (a: number) => number;
    readonly runview_full_max: (a: number) => number;
    readonly runview_t: (a: number) => [number, number];
    readonly runview_x_act: (a: number) => [number, number];
    readonly runview_x_ref: (a: number) => [number, number];
    readonly runview_y_act: (a: number) => [number, number];
    readonly runview_y_ref: (a: number) => [number, number];
    readonly simulate: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
