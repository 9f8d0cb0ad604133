/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_ayorbit_free: (a: number, b: number) => void;
export const ay_orbit: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const ayorbit_j1_drift: (a: number) => number;
export const ayorbit_j2_drift: (a: number) => number;
export const ayorbit_points: (a: number) => [number, number];
export const curve_points: (a: number) => [number, number];
export const discriminant_slice: (a: number, b: number, c: number) => [number, number];
export const map_ids: () => [number, number];
export const yb_residuals: (a: bigint, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
