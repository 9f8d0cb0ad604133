/* tslint:disable */
/* eslint-disable */

export class AyOrbit {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly j1_drift: number;
    readonly j2_drift: number;
    /**
     * `(x₁, x₂)` of the carried site at every step, flattened.
     */
    readonly points: Float64Array;
}

/**
 * Evolves the 1-periodic staircase `(x, y)` for `steps` transfer steps.
 */
export function ay_orbit(x: Float64Array, alpha: Float64Array, y: Float64Array, beta: Float64Array, steps: number): AyOrbit;

/**
 * Where the Boussinesq and GV curves cross the slice at `a₂`, as
 * `[a₀, a₁]` pairs in that order.
 */
export function curve_points(a2: number): Float64Array;

/**
 * The surface polynomial on an `n × n` grid of `(a₀, a₁) ∈ [-w, w]²` at fixed
 * `a₂`, row-major with `a₁` decreasing down the rows.
 */
export function discriminant_slice(a2: number, w: number, n: number): Float64Array;

export function map_ids(): string[];

/**
 * Largest Yang–Baxter residual over `samples` random triples for each map
 * in [`map_ids`] order; `NaN` where no admissible triple was found.
 */
export function yb_residuals(seed: bigint, samples: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_ayorbit_free: (a: number, b: number) => void;
    readonly ay_orbit: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly ayorbit_j1_drift: (a: number) => number;
    readonly ayorbit_j2_drift: (a: number) => number;
    readonly ayorbit_points: (a: number) => [number, number];
    readonly curve_points: (a: number) => [number, number];
    readonly discriminant_slice: (a: number, b: number, c: number) => [number, number];
    readonly map_ids: () => [number, number];
    readonly yb_residuals: (a: bigint, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
