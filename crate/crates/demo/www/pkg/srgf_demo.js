/* @ts-self-types="./srgf_demo.d.ts" */

export class CodingSummary {
    static __wrap(ptr) {
        const obj = Object.create(CodingSummary.prototype);
        obj.__wbg_ptr = ptr;
        CodingSummaryFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CodingSummaryFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_codingsummary_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get bpp() {
        const ret = wasm.__wbg_get_codingsummary_bpp(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get bytes() {
        const ret = wasm.__wbg_get_codingsummary_bytes(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * `+inf` for an exact reconstruction.
     * @returns {number}
     */
    get psnr_db() {
        const ret = wasm.__wbg_get_codingsummary_psnr_db(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set bpp(arg0) {
        wasm.__wbg_set_codingsummary_bpp(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set bytes(arg0) {
        wasm.__wbg_set_codingsummary_bytes(this.__wbg_ptr, arg0);
    }
    /**
     * `+inf` for an exact reconstruction.
     * @param {number} arg0
     */
    set psnr_db(arg0) {
        wasm.__wbg_set_codingsummary_psnr_db(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) CodingSummary.prototype[Symbol.dispose] = CodingSummary.prototype.free;

export class Demo {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        DemoFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_demo_free(ptr, 0);
    }
    /**
     * @returns {Summary}
     */
    analyze() {
        const ret = wasm.demo_analyze(this.__wbg_ptr);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        return Summary.__wrap(ret[0]);
    }
    /**
     * `mode` is `nonseparable` or `separable`; `q` a positive step or
     * `bypass`.
     * @param {string} mode
     * @param {string} q
     * @returns {CodingSummary}
     */
    code(mode, q) {
        const ptr0 = passStringToWasm0(mode, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        const ptr1 = passStringToWasm0(q, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len1 = WASM_VECTOR_LEN;
        const ret = wasm.demo_code(this.__wbg_ptr, ptr0, len0, ptr1, len1);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        return CodingSummary.__wrap(ret[0]);
    }
    /**
     * @returns {Float64Array}
     */
    conditioning() {
        const ret = wasm.demo_conditioning(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} m
     * @param {number} n
     * @returns {Uint8Array}
     */
    decoded(m, n) {
        const ret = wasm.demo_decoded(this.__wbg_ptr, m, n);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * Empty until `analyze` has run.
     * @param {boolean} separable
     * @returns {Uint8Array}
     */
    energy_map(separable) {
        const ret = wasm.demo_energy_map(this.__wbg_ptr, separable);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @param {number} m
     * @param {number} n
     * @returns {Uint8Array}
     */
    error(m, n) {
        const ret = wasm.demo_error(this.__wbg_ptr, m, n);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @param {number} seed
     * @param {number} size
     */
    constructor(seed, size) {
        const ret = wasm.demo_new(seed, size);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        this.__wbg_ptr = ret[0];
        DemoFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
    /**
     * @param {number} superrays
     * @param {number} compactness
     * @returns {number}
     */
    segment(superrays, compactness) {
        const ret = wasm.demo_segment(this.__wbg_ptr, superrays, compactness);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        return ret[0] >>> 0;
    }
    /**
     * @returns {number}
     */
    size() {
        const ret = wasm.demo_size(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @param {number} m
     * @param {number} n
     * @returns {Uint8Array}
     */
    superrays(m, n) {
        const ret = wasm.demo_superrays(this.__wbg_ptr, m, n);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @param {number} m
     * @param {number} n
     * @returns {Uint8Array}
     */
    view(m, n) {
        const ret = wasm.demo_view(this.__wbg_ptr, m, n);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    views() {
        const ret = wasm.demo_views(this.__wbg_ptr);
        return ret >>> 0;
    }
}
if (Symbol.dispose) Demo.prototype[Symbol.dispose] = Demo.prototype.free;

export class Summary {
    static __wrap(ptr) {
        const obj = Object.create(Summary.prototype);
        obj.__wbg_ptr = ptr;
        SummaryFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SummaryFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_summary_free(ptr, 0);
    }
    /**
     * @returns {bigint}
     */
    get dc_direct_bits() {
        const ret = wasm.__wbg_get_summary_dc_direct_bits(this.__wbg_ptr);
        return BigInt.asUintN(64, ret);
    }
    /**
     * @returns {number}
     */
    get energy_nonseparable() {
        const ret = wasm.__wbg_get_summary_energy_nonseparable(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get energy_separable() {
        const ret = wasm.__wbg_get_summary_energy_separable(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get max_cond_naive() {
        const ret = wasm.__wbg_get_summary_max_cond_naive(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get max_cond_sampled() {
        const ret = wasm.__wbg_get_summary_max_cond_sampled(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get median_cond_naive() {
        const ret = wasm.__wbg_get_summary_median_cond_naive(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get median_cond_sampled() {
        const ret = wasm.__wbg_get_summary_median_cond_sampled(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {bigint}
     */
    get reference_bits() {
        const ret = wasm.__wbg_get_summary_reference_bits(this.__wbg_ptr);
        return BigInt.asUintN(64, ret);
    }
    /**
     * @returns {number}
     */
    get superrays() {
        const ret = wasm.__wbg_get_summary_superrays(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @param {bigint} arg0
     */
    set dc_direct_bits(arg0) {
        wasm.__wbg_set_summary_dc_direct_bits(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set energy_nonseparable(arg0) {
        wasm.__wbg_set_summary_energy_nonseparable(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set energy_separable(arg0) {
        wasm.__wbg_set_summary_energy_separable(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set max_cond_naive(arg0) {
        wasm.__wbg_set_summary_max_cond_naive(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set max_cond_sampled(arg0) {
        wasm.__wbg_set_summary_max_cond_sampled(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set median_cond_naive(arg0) {
        wasm.__wbg_set_summary_median_cond_naive(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set median_cond_sampled(arg0) {
        wasm.__wbg_set_summary_median_cond_sampled(this.__wbg_ptr, arg0);
    }
    /**
     * @param {bigint} arg0
     */
    set reference_bits(arg0) {
        wasm.__wbg_set_summary_reference_bits(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set superrays(arg0) {
        wasm.__wbg_set_summary_superrays(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Summary.prototype[Symbol.dispose] = Summary.prototype.free;
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_92b29b0548f8b746: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_344f42d3211c4765: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./srgf_demo_bg.js": import0,
    };
}

const CodingSummaryFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_codingsummary_free(ptr, 1));
const DemoFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_demo_free(ptr, 1));
const SummaryFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_summary_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = module.ok && expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('srgf_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
