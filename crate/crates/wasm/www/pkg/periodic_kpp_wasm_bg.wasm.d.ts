/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_optimalprofile_c_star: (a: number) => number;
export const __wbg_get_optimalprofile_eigenfunction_deviation: (a: number) => number;
export const __wbg_get_optimalprofile_lower_bound: (a: number) => number;
export const __wbg_get_scan_limit_value: (a: number) => number;
export const __wbg_get_scan_second_difference: (a: number) => number;
export const __wbg_get_scan_second_difference_tolerance: (a: number) => number;
export const __wbg_get_speedcurve_c_star: (a: number) => number;
export const __wbg_get_speedcurve_condition_residual: (a: number) => number;
export const __wbg_get_speedcurve_lambda_star: (a: number) => number;
export const __wbg_get_speedcurve_lower_bound: (a: number) => number;
export const __wbg_optimalprofile_free: (a: number, b: number) => void;
export const __wbg_scan_free: (a: number, b: number) => void;
export const __wbg_set_optimalprofile_c_star: (a: number, b: number) => void;
export const __wbg_set_optimalprofile_eigenfunction_deviation: (a: number, b: number) => void;
export const __wbg_set_optimalprofile_lower_bound: (a: number, b: number) => void;
export const __wbg_set_scan_limit_value: (a: number, b: number) => void;
export const __wbg_set_scan_second_difference: (a: number, b: number) => void;
export const __wbg_set_scan_second_difference_tolerance: (a: number, b: number) => void;
export const __wbg_set_speedcurve_c_star: (a: number, b: number) => void;
export const __wbg_set_speedcurve_condition_residual: (a: number, b: number) => void;
export const __wbg_set_speedcurve_lambda_star: (a: number, b: number) => void;
export const __wbg_set_speedcurve_lower_bound: (a: number, b: number) => void;
export const __wbg_speedcurve_free: (a: number, b: number) => void;
export const optimalProfile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const optimalprofile_d: (a: number) => [number, number];
export const optimalprofile_r_d: (a: number) => [number, number];
export const optimalprofile_xs: (a: number) => [number, number];
export const periodScan: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const scan_ls: (a: number) => [number, number];
export const scan_speeds: (a: number) => [number, number];
export const speedCurve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const speedcurve_lambdas: (a: number) => [number, number];
export const speedcurve_values: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
