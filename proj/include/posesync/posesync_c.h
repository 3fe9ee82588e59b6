#ifndef POSESYNC_C_H
#define POSESYNC_C_H

/* C interface to the SE(2) pose-synchronization library.
 *
 * All functions return ps_status; PS_OK is 0. On failure the thread-local
 * message from ps_last_error() describes the problem. Strings returned
 * through char** out-parameters are heap-allocated and must be released
 * with ps_string_free(). Opaque graph handles are released with
 * ps_graph_free().
 *
 * Structured inputs and outputs are JSON documents:
 *   - pose graphs use the interchange schema
 *     {"nodes":[{"id","true","noisy","provenance"}],"edges":[...]}
 *     with poses as [x_m, y_m, theta_deg];
 *   - experiment configs use the same schema as the CLI --config file.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_INVALID_ARGUMENT = 1,
  PS_ERR_PARSE = 2,
  PS_ERR_IO = 3,
  PS_ERR_INTERNAL = 4
} ps_status;

typedef struct ps_graph ps_graph;

const char* ps_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* ps_last_error(void);

void ps_string_free(char* str);
void ps_graph_free(ps_graph* graph);

/* Parses a pose-graph JSON document. */
ps_status ps_graph_parse(const char* graph_json, ps_graph** out_graph);

/* Generates the graph of one simulated trial from an experiment config. */
ps_status ps_graph_generate(const char* config_json, uint64_t seed,
                            int trial_index, ps_graph** out_graph);

ps_status ps_graph_to_json(const ps_graph* graph, char** out_json);

/* Runs one method on the graph. Method names: no_correction, pairwise,
 * gaussian_noreweight, gaussian_reweight, t_noreweight, t_reweight.
 * consistency_json may be NULL for defaults; it accepts the
 * "consistency" object of the experiment-config schema. The result JSON
 * carries synchronized absolute poses (where the method produces them)
 * and corrected relative poses per directed edge. */
ps_status ps_graph_synchronize(const ps_graph* graph, const char* method,
                               const char* consistency_json, char** out_json);

/* Runs a full experiment (config_json: experiment-config schema) and
 * writes <out_dir>/results.<format> with one row per trial and method.
 * format is "csv" or "json". out_summary receives the JSON rows. */
ps_status ps_run_experiment(const char* config_json, const char* out_dir,
                            const char* format, char** out_summary);

/* Runs a sweep grid {"base": <config>, "cells": [<merge patch>, ...]}
 * and writes <out_dir>/sweep.<format>. Failed cells are reported in the
 * summary and do not stop the sweep. */
ps_status ps_run_sweep(const char* grid_json, const char* out_dir,
                       const char* format, char** out_summary);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POSESYNC_C_H */
