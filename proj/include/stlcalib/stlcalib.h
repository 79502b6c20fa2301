/* Copyright 2026 the stlcalib authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the stlcalib shared library.
 *
 * All functions return STLCALIB_OK on success; on failure they return the
 * status that classifies the error and leave a human-readable message in
 * stlcalib_last_error() (thread-local). Output parameters are written only
 * on success. Handles are opaque; release them with the matching *_free.
 * Strings returned through char** outputs are NUL-terminated, owned by the
 * caller and released with stlcalib_free_string.
 *
 * Structured inputs and outputs travel as JSON documents; the schemas are
 * described next to each function.
 */

#ifndef STLCALIB_STLCALIB_H_
#define STLCALIB_STLCALIB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define STLCALIB_API __declspec(dllexport)
#else
#define STLCALIB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stlcalib_status {
  STLCALIB_OK = 0,
  STLCALIB_ERROR_INVALID_ARGUMENT = 1,
  STLCALIB_ERROR_PARSE = 2,
  STLCALIB_ERROR_EVAL = 3,
  STLCALIB_ERROR_IO = 4,
  STLCALIB_ERROR_INTERNAL = 5
} stlcalib_status;

typedef struct stlcalib_dataset stlcalib_dataset;
typedef struct stlcalib_formula stlcalib_formula;

/* Library version, e.g. "0.1.0". Static storage; do not free. */
STLCALIB_API const char* stlcalib_version(void);

/* Stable name of a status code, e.g. "parse". Static storage. */
STLCALIB_API const char* stlcalib_status_name(stlcalib_status status);

/* Message of the last failure on the calling thread; empty string if the
 * last call succeeded. Static thread-local storage; do not free. */
STLCALIB_API const char* stlcalib_last_error(void);

STLCALIB_API void stlcalib_free_string(char* s);

/* ------------------------------------------------------------------ */
/* Datasets. `format` is "jsonl" or "csv".                              */
/* ------------------------------------------------------------------ */

STLCALIB_API stlcalib_status stlcalib_dataset_parse(const char* text,
                                                    size_t length,
                                                    const char* format,
                                                    stlcalib_dataset** out);

STLCALIB_API stlcalib_status stlcalib_dataset_load(const char* path,
                                                   const char* format,
                                                   stlcalib_dataset** out);

STLCALIB_API stlcalib_status stlcalib_dataset_serialize(
    const stlcalib_dataset* dataset, const char* format, char** out);

STLCALIB_API stlcalib_status stlcalib_dataset_save(
    const stlcalib_dataset* dataset, const char* path, const char* format);

/* config_json: {"count":N,"min_steps":a,"max_steps":b,"accuracy":x,
 *   "correct_profile":"rising","incorrect_profile":"spiky",
 *   "noise_sd":s,"seed":u}
 * Profiles: rising | flat_high | spiky | collapsing. */
STLCALIB_API stlcalib_status stlcalib_dataset_synthesize(
    const char* config_json, stlcalib_dataset** out);

/* Returns a copy with floor(val_fraction*n) traces re-tagged validation and
 * the rest test, deterministically from (seed, trace id). */
STLCALIB_API stlcalib_status stlcalib_dataset_split(
    const stlcalib_dataset* dataset, double val_fraction, uint64_t seed,
    stlcalib_dataset** out);

/* params_json: {"strategy":"cms","delta":0.1,"alpha":0.5,"tau":0.5,
 *   "epsilon":0.05,"recursive":false} — only the keys the strategy consumes
 * are required. Strategies: cms | eds | mps | gs | identity. */
STLCALIB_API stlcalib_status stlcalib_dataset_reshape(
    const stlcalib_dataset* dataset, const char* params_json,
    stlcalib_dataset** out);

/* Digest JSON: {"traces":N,"min_steps":a,"max_steps":b,
 *   "sources":{...},"splits":{...},"correct":k,"summary":"<one line>"} */
STLCALIB_API stlcalib_status stlcalib_dataset_summary(
    const stlcalib_dataset* dataset, char** json_out);

STLCALIB_API size_t stlcalib_dataset_trace_count(const stlcalib_dataset* dataset);

STLCALIB_API void stlcalib_dataset_free(stlcalib_dataset* dataset);

/* ------------------------------------------------------------------ */
/* Formulas.                                                            */
/* ------------------------------------------------------------------ */

/* Text DSL, e.g. "F[1,END](sig > 0.7)" or "G[2,END](|delta| <= 0.2)". */
STLCALIB_API stlcalib_status stlcalib_formula_parse(const char* text,
                                                    stlcalib_formula** out);

/* name: "stl1" (param = tau), "stl2" (param = epsilon), "stl3" (param =
 * delta). Windows default to the full trace. */
STLCALIB_API stlcalib_status stlcalib_formula_preset(const char* name,
                                                     double param,
                                                     stlcalib_formula** out);

STLCALIB_API stlcalib_status stlcalib_formula_print(
    const stlcalib_formula* formula, char** out);

STLCALIB_API void stlcalib_formula_free(stlcalib_formula* formula);

/* ------------------------------------------------------------------ */
/* Signal-level evaluation. Samples must be finite values in [0,1].     */
/* ------------------------------------------------------------------ */

STLCALIB_API stlcalib_status stlcalib_robustness(
    const stlcalib_formula* formula, const double* samples, size_t length,
    double* value_out, int* satisfied_out);

/* Clamped score min(max(rho,0),1). */
STLCALIB_API stlcalib_status stlcalib_score_signal(
    const stlcalib_formula* formula, const double* samples, size_t length,
    double* score_out);

/* Writes the reshaped signal into `out` (same length as the input). */
STLCALIB_API stlcalib_status stlcalib_reshape_signal(const char* params_json,
                                                     const double* samples,
                                                     size_t length,
                                                     double* out);

/* ------------------------------------------------------------------ */
/* Batch pipelines. request_json carries flat keys mirroring the CLI:  */
/*   strategy, delta, alpha, tau, epsilon, recursive,                  */
/*   formula ("stl1"|"stl2"|"stl3") or formula_text (DSL),             */
/*   method (calibrate only), bins, eval_split, threads.               */
/* ------------------------------------------------------------------ */

/* Scores every trace of the requested split (default "test"; "all" scores
 * everything). `scored_out`, if non-NULL, receives a dataset of single-step
 * traces holding the scores (excluded traces dropped) so the result feeds
 * straight back into calibration. `rows_json_out`, if non-NULL, receives
 * {"scored":[{"id","score","correct","source","split"}...],
 *  "excluded":[{"id","reason"}...]} ordered by trace id. */
STLCALIB_API stlcalib_status stlcalib_score_dataset(
    const stlcalib_dataset* dataset, const char* request_json,
    stlcalib_dataset** scored_out, char** rows_json_out);

/* method: one-step | cot-average | temperature | histogram |
 *         stl1 | stl2 | stl3 (with strategy + parameters).
 * temperature and histogram fit on the validation split, then evaluate on
 * eval_split (default "test"); the fitted parameter is echoed in the
 * report. Returns a calibration report JSON. */
STLCALIB_API stlcalib_status stlcalib_calibrate(const stlcalib_dataset* dataset,
                                                const char* request_json,
                                                char** report_json_out);

/* spec_json: {"formula":"stl1","strategy":"cms","bins":10,
 *   "tau_grid":[...],"epsilon_grid":[...],"delta_grid":[...],
 *   "alpha_grid":[...],"window_lo_grid":[...],"window_hi_grid":[...]}
 * Unconsumed grids are ignored; window grids are optional. Returns a tune
 * result JSON with best_params, best_ece, evaluations and skipped points. */
STLCALIB_API stlcalib_status stlcalib_tune(const stlcalib_dataset* dataset,
                                           const char* spec_json,
                                           char** result_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STLCALIB_STLCALIB_H_ */
