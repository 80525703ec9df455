/* tslint:disable */
/* eslint-disable */

export class CodingSummary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    bpp: number;
    bytes: number;
    /**
     * `+inf` for an exact reconstruction.
     */
    psnr_db: number;
}

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    analyze(): Summary;
    /**
     * `mode` is `nonseparable` or `separable`; `q` a positive step or
     * `bypass`.
     */
    code(mode: string, q: string): CodingSummary;
    conditioning(): Float64Array;
    decoded(m: number, n: number): Uint8Array;
    /**
     * Empty until `analyze` has run.
     */
    energy_map(separable: boolean): Uint8Array;
    error(m: number, n: number): Uint8Array;
    constructor(seed: number, size: number);
    segment(superrays: number, compactness: number): number;
    size(): number;
    superrays(m: number, n: number): Uint8Array;
    view(m: number, n: number): Uint8Array;
    views(): number;
}

export class Summary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    dc_direct_bits: bigint;
    energy_nonseparable: number;
    energy_separable: number;
    max_cond_naive: number;
    max_cond_sampled: number;
    median_cond_naive: number;
    median_cond_sampled: number;
    reference_bits: bigint;
    superrays: number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_codingsummary_free: (a: number, b: number) => void;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_get_codingsummary_bpp: (a: number) => number;
    readonly __wbg_get_codingsummary_bytes: (a: number) => number;
    readonly __wbg_get_codingsummary_psnr_db: (a: number) => number;
    readonly __wbg_get_summary_dc_direct_bits: (a: number) => bigint;
    readonly __wbg_get_summary_max_cond_naive: (a: number) => number;
    readonly __wbg_get_summary_max_cond_sampled: (a: number) => number;
    readonly __wbg_get_summary_median_cond_naive: (a: number) => number;
    readonly __wbg_get_summary_median_cond_sampled: (a: number) => number;
    readonly __wbg_get_summary_reference_bits: (a: number) => bigint;
    readonly __wbg_get_summary_superrays: (a: number) => number;
    readonly __wbg_set_codingsummary_bpp: (a: number, b: number) => void;
    readonly __wbg_set_codingsummary_bytes: (a: number, b: number) => void;
    readonly __wbg_set_codingsummary_psnr_db: (a: number, b: number) => void;
    readonly __wbg_set_summary_dc_direct_bits: (a: number, b: bigint) => void;
    readonly __wbg_set_summary_max_cond_naive: (a: number, b: number) => void;
    readonly __wbg_set_summary_max_cond_sampled: (a: number, b: number) => void;
    readonly __wbg_set_summary_median_cond_naive: (a: number, b: number) => void;
    readonly __wbg_set_summary_median_cond_sampled: (a: number, b: number) => void;
    readonly __wbg_set_summary_reference_bits: (a: number, b: bigint) => void;
    readonly __wbg_set_summary_superrays: (a: number, b: number) => void;
    readonly __wbg_summary_free: (a: number, b: number) => void;
    readonly demo_analyze: (a: number) => [number, number, number];
    readonly demo_code: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly demo_conditioning: (a: number) => [number, number];
    readonly demo_decoded: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_energy_map: (a: number, b: number) => [number, number];
    readonly demo_error: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_new: (a: number, b: number) => [number, number, number];
    readonly demo_segment: (a: number, b: number, c: number) => [number, number, number];
    readonly demo_size: (a: number) => number;
    readonly demo_superrays: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_view: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_views: (a: number) => number;
    readonly __wbg_get_summary_energy_nonseparable: (a: number) => number;
    readonly __wbg_get_summary_energy_separable: (a: number) => number;
    readonly __wbg_set_summary_energy_nonseparable: (a: number, b: number) => void;
    readonly __wbg_set_summary_energy_separable: (a: number, b: number) => void;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
