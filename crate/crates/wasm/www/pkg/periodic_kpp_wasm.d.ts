/* tslint:disable */
/* eslint-disable */

/**
 * The optimal growth profile `r_d` for a given `d`, with its speed.
 */
export class OptimalProfile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    c_star: number;
    eigenfunction_deviation: number;
    lower_bound: number;
    readonly d: Float64Array;
    readonly r_d: Float64Array;
    readonly xs: Float64Array;
}

/**
 * `c*_L` over geometrically spaced periods; `d` and `r` are given on the
 * unit period.
 */
export class Scan {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    limit_value: number;
    second_difference_tolerance: number;
    second_difference: number;
    readonly ls: Float64Array;
    readonly speeds: Float64Array;
}

/**
 * `g(lambda) = -k_lambda / lambda` on a geometric grid around the minimizer.
 */
export class SpeedCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    c_star: number;
    condition_residual: number;
    lambda_star: number;
    lower_bound: number;
    readonly lambdas: Float64Array;
    readonly values: Float64Array;
}

export function optimalProfile(d: string, period: number, alpha: number, grid_size: number): OptimalProfile;

export function periodScan(d: string, r: string, lo: number, hi: number, count: number, grid_size: number): Scan;

export function speedCurve(d: string, r: string, period: number, grid_size: number, points: number): SpeedCurve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_optimalprofile_c_star: (a: number) => number;
    readonly __wbg_get_optimalprofile_eigenfunction_deviation: (a: number) => number;
    readonly __wbg_get_optimalprofile_lower_bound: (a: number) => number;
    readonly __wbg_get_scan_limit_value: (a: number) => number;
    readonly __wbg_get_scan_second_difference: (a: number) => number;
    readonly __wbg_get_scan_second_difference_tolerance: (a: number) => number;
    readonly __wbg_get_speedcurve_c_star: (a: number) => number;
    readonly __wbg_get_speedcurve_condition_residual: (a: number) => number;
    readonly __wbg_get_speedcurve_lambda_star: (a: number) => number;
    readonly __wbg_get_speedcurve_lower_bound: (a: number) => number;
    readonly __wbg_optimalprofile_free: (a: number, b: number) => void;
    readonly __wbg_scan_free: (a: number, b: number) => void;
    readonly __wbg_set_optimalprofile_c_star: (a: number, b: number) => void;
    readonly __wbg_set_optimalprofile_eigenfunction_deviation: (a: number, b: number) => void;
    readonly __wbg_set_optimalprofile_lower_bound: (a: number, b: number) => void;
    readonly __wbg_set_scan_limit_value: (a: number, b: number) => void;
    readonly __wbg_set_scan_second_difference: (a: number, b: number) => void;
    readonly __wbg_set_scan_second_difference_tolerance: (a: number, b: number) => void;
    readonly __wbg_set_speedcurve_c_star: (a: number, b: number) => void;
    readonly __wbg_set_speedcurve_condition_residual: (a: number, b: number) => void;
    readonly __wbg_set_speedcurve_lambda_star: (a: number, b: number) => void;
    readonly __wbg_set_speedcurve_lower_bound: (a: number, b: number) => void;
    readonly __wbg_speedcurve_free: (a: number, b: number) => void;
    readonly optimalProfile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly optimalprofile_d: (a: number) => [number, number];
    readonly optimalprofile_r_d: (a: number) => [number, number];
    readonly optimalprofile_xs: (a: number) => [number, number];
    readonly periodScan: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly scan_ls: (a: number) => [number, number];
    readonly scan_speeds: (a: number) => [number, number];
    readonly speedCurve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly speedcurve_lambdas: (a: number) => [number, number];
    readonly speedcurve_values: (a: number) => [number, number];
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
