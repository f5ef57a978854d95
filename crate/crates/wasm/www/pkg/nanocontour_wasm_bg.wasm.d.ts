/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_runview_free: (a: number, b: number) => void;
export const coupling_sweep: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const probe: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const runview_eps: (a: number) => [number, number];
export const runview_final_max: (a: number) => number;
export const runview_final_rms: (a: number) => number;
export const runview_full_max: (a: number) => number;
export const runview_t: (a: number) => [number, number];
export const runview_x_act: (a: number) => [number, number];
export const runview_x_ref: (a: number) => [number, number];
export const runview_y_act: (a: number) => [number, number];
export const runview_y_ref: (a: number) => [number, number];
export const simulate: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
