/* @ts-self-types="./periodic_kpp_wasm.d.ts" */

/**
 * The optimal growth profile `r_d` for a given `d`, with its speed.
 */
export class OptimalProfile {
    static __wrap(ptr) {
        const obj = Object.create(OptimalProfile.prototype);
        obj.__wbg_ptr = ptr;
        OptimalProfileFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        OptimalProfileFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_optimalprofile_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get c_star() {
        const ret = wasm.__wbg_get_optimalprofile_c_star(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get eigenfunction_deviation() {
        const ret = wasm.__wbg_get_optimalprofile_eigenfunction_deviation(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get lower_bound() {
        const ret = wasm.__wbg_get_optimalprofile_lower_bound(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get d() {
        const ret = wasm.optimalprofile_d(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get r_d() {
        const ret = wasm.optimalprofile_r_d(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get xs() {
        const ret = wasm.optimalprofile_xs(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} arg0
     */
    set c_star(arg0) {
        wasm.__wbg_set_optimalprofile_c_star(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set eigenfunction_deviation(arg0) {
        wasm.__wbg_set_optimalprofile_eigenfunction_deviation(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set lower_bound(arg0) {
        wasm.__wbg_set_optimalprofile_lower_bound(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) OptimalProfile.prototype[Symbol.dispose] = OptimalProfile.prototype.free;

/**
 * `c*_L` over geometrically spaced periods; `d` and `r` are given on the
 * unit period.
 */
export class Scan {
    static __wrap(ptr) {
        const obj = Object.create(Scan.prototype);
        obj.__wbg_ptr = ptr;
        ScanFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ScanFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_scan_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get limit_value() {
        const ret = wasm.__wbg_get_scan_limit_value(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get second_difference_tolerance() {
        const ret = wasm.__wbg_get_scan_second_difference_tolerance(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get second_difference() {
        const ret = wasm.__wbg_get_scan_second_difference(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get ls() {
        const ret = wasm.scan_ls(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get speeds() {
        const ret = wasm.scan_speeds(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @param {number} arg0
     */
    set limit_value(arg0) {
        wasm.__wbg_set_scan_limit_value(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set second_difference_tolerance(arg0) {
        wasm.__wbg_set_scan_second_difference_tolerance(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set second_difference(arg0) {
        wasm.__wbg_set_scan_second_difference(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Scan.prototype[Symbol.dispose] = Scan.prototype.free;

/**
 * `g(lambda) = -k_lambda / lambda` on a geometric grid around the minimizer.
 */
export class SpeedCurve {
    static __wrap(ptr) {
        const obj = Object.create(SpeedCurve.prototype);
        obj.__wbg_ptr = ptr;
        SpeedCurveFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SpeedCurveFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_speedcurve_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get c_star() {
        const ret = wasm.__wbg_get_speedcurve_c_star(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get condition_residual() {
        const ret = wasm.__wbg_get_speedcurve_condition_residual(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get lambda_star() {
        const ret = wasm.__wbg_get_speedcurve_lambda_star(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get lower_bound() {
        const ret = wasm.__wbg_get_speedcurve_lower_bound(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set c_star(arg0) {
        wasm.__wbg_set_speedcurve_c_star(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set condition_residual(arg0) {
        wasm.__wbg_set_speedcurve_condition_residual(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set lambda_star(arg0) {
        wasm.__wbg_set_speedcurve_lambda_star(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set lower_bound(arg0) {
        wasm.__wbg_set_speedcurve_lower_bound(this.__wbg_ptr, arg0);
    }
    /**
     * @returns {Float64Array}
     */
    get lambdas() {
        const ret = wasm.speedcurve_lambdas(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get values() {
        const ret = wasm.speedcurve_values(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) SpeedCurve.prototype[Symbol.dispose] = SpeedCurve.prototype.free;

/**
 * @param {string} d
 * @param {number} period
 * @param {number} alpha
 * @param {number} grid_size
 * @returns {OptimalProfile}
 */
export function optimalProfile(d, period, alpha, grid_size) {
    const ptr0 = passStringToWasm0(d, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.optimalProfile(ptr0, len0, period, alpha, grid_size);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return OptimalProfile.__wrap(ret[0]);
}

/**
 * @param {string} d
 * @param {string} r
 * @param {number} lo
 * @param {number} hi
 * @param {number} count
 * @param {number} grid_size
 * @returns {Scan}
 */
export function periodScan(d, r, lo, hi, count, grid_size) {
    const ptr0 = passStringToWasm0(d, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passStringToWasm0(r, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len1 = WASM_VECTOR_LEN;
    const ret = wasm.periodScan(ptr0, len0, ptr1, len1, lo, hi, count, grid_size);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Scan.__wrap(ret[0]);
}

/**
 * @param {string} d
 * @param {string} r
 * @param {number} period
 * @param {number} grid_size
 * @param {number} points
 * @returns {SpeedCurve}
 */
export function speedCurve(d, r, period, grid_size, points) {
    const ptr0 = passStringToWasm0(d, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passStringToWasm0(r, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len1 = WASM_VECTOR_LEN;
    const ret = wasm.speedCurve(ptr0, len0, ptr1, len1, period, grid_size, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SpeedCurve.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
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
        "./periodic_kpp_wasm_bg.js": import0,
    };
}

const OptimalProfileFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_optimalprofile_free(ptr, 1));
const ScanFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_scan_free(ptr, 1));
const SpeedCurveFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_speedcurve_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
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
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

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
        module_or_path = new URL('periodic_kpp_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
