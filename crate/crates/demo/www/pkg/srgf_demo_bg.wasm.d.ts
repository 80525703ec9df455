/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_codingsummary_free: (a: number, b: number) => void;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_get_codingsummary_bpp: (a: number) => number;
export const __wbg_get_codingsummary_bytes: (a: number) => number;
export const __wbg_get_codingsummary_psnr_db: (a: number) => number;
export const __wbg_get_summary_dc_direct_bits: (a: number) => bigint;
export const __wbg_get_summary_max_cond_naive: (a: number) => number;
export const __wbg_get_summary_max_cond_sampled: (a: number) => number;
export const __wbg_get_summary_median_cond_naive: (a: number) => number;
export const __wbg_get_summary_median_cond_sampled: (a: number) => number;
export const __wbg_get_summary_reference_bits: (a: number) => bigint;
export const __wbg_get_summary_superrays: (a: number) => number;
export const __wbg_set_codingsummary_bpp: (a: number, b: number) => void;
export const __wbg_set_codingsummary_bytes: (a: number, b: number) => void;
export const __wbg_set_codingsummary_psnr_db: (a: number, b: number) => void;
export const __wbg_set_summary_dc_direct_bits: (a: number, b: bigint) => void;
export const __wbg_set_summary_max_cond_naive: (a: number, b: number) => void;
export const __wbg_set_summary_max_cond_sampled: (a: number, b: number) => void;
export const __wbg_set_summary_median_cond_naive: (a: number, b: number) => void;
export const __wbg_set_summary_median_cond_sampled: (a: number, b: number) => void;
export const __wbg_set_summary_reference_bits: (a: number, b: bigint) => void;
export const __wbg_set_summary_superrays: (a: number, b: number) => void;
export const __wbg_summary_free: (a: number, b: number) => void;
export const demo_analyze: (a: number) => [number, number, number];
export const demo_code: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const demo_conditioning: (a: number) => [number, number];
export const demo_decoded: (a: number, b: number, c: number) => [number, number, number, number];
export const demo_energy_map: (a: number, b: number) => [number, number];
export const demo_error: (a: number, b: number, c: number) => [number, number, number, number];
export const demo_new: (a: number, b: number) => [number, number, number];
export const demo_segment: (a: number, b: number, c: number) => [number, number, number];
export const demo_size: (a: number) => number;
export const demo_superrays: (a: number, b: number, c: number) => [number, number, number, number];
export const demo_view: (a: number, b: number, c: number) => [number, number, number, number];
export const demo_views: (a: number) => number;
export const __wbg_get_summary_energy_nonseparable: (a: number) => number;
export const __wbg_get_summary_energy_separable: (a: number) => number;
export const __wbg_set_summary_energy_nonseparable: (a: number, b: number) => void;
export const __wbg_set_summary_energy_separable: (a: number, b: number) => void;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
