/* C interface to the freegraph library. All handles are opaque; every call that
 * can fail returns an fg_status and leaves a message for fg_last_error(). */
#ifndef FREEGRAPH_FREEGRAPH_H
#define FREEGRAPH_FREEGRAPH_H

#include <stddef.h>

#if defined(_WIN32)
#define FG_API __declspec(dllexport)
#else
#define FG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fg_status {
  FG_OK = 0,
  FG_ERR_INVALID_ARGUMENT = 1,
  FG_ERR_PARSE = 2,
  FG_ERR_INVALID_GRAPH = 3,
  FG_ERR_EDGE_COUNT = 4,
  FG_ERR_NOT_SELF_ADJOINT = 5,
  FG_ERR_NOT_CORNERED = 6,
  FG_ERR_DEPTH_TOO_SHALLOW = 7,
  FG_ERR_CAPACITY_EXCEEDED = 8,
  FG_ERR_LOOP_EDGE = 9,
  FG_ERR_NOT_EXACT = 10,
  FG_ERR_IO = 11,
  FG_ERR_INTERNAL = 100
} fg_status;

typedef struct fg_graph fg_graph;
typedef struct fg_config fg_config;
typedef struct fg_report fg_report;

/* Message of the last failed call on this thread; empty after a success. */
FG_API const char* fg_last_error(void);
FG_API const char* fg_status_name(fg_status status);
FG_API const char* fg_version(void);

FG_API fg_status fg_graph_load(const char* path, fg_graph** out);
FG_API fg_status fg_graph_parse(const char* text, fg_graph** out);
FG_API void fg_graph_free(fg_graph* graph);
FG_API size_t fg_graph_vertex_count(const fg_graph* graph);
FG_API size_t fg_graph_oriented_edge_count(const fg_graph* graph);

/* Word as comma-separated oriented-edge labels, e.g. "e+,e-". */
FG_API fg_status fg_trace_word(fg_graph* graph, const char* word, double* out);
/* Expression in the polynomial mini-language; writes real and imaginary parts. */
FG_API fg_status fg_trace_expr(fg_graph* graph, const char* expr, double* re, double* im);
/* m_0..m_max_order of a self-adjoint element in the corner of `vertex`
 * (NULL: inferred from the expression). `out` holds max_order + 1 values. */
FG_API fg_status fg_moments(fg_graph* graph, const char* expr, const char* vertex, int max_order, double* out);

/* Run configuration for a subcommand: classify, trace, moments, law, series,
 * fock-check, wishart. Keys use the command-line spelling without dashes in front. */
FG_API fg_status fg_config_new(const char* command, fg_config** out);
FG_API fg_status fg_config_set(fg_config* config, const char* key, const char* value);
FG_API void fg_config_free(fg_config* config);

/* Runs a configuration. Input errors return a status; otherwise *out receives a
 * report whose exit code is 0, or 2 when an internal consistency check failed. */
FG_API fg_status fg_run(const fg_config* config, fg_report** out);
FG_API int fg_report_exit_code(const fg_report* report);
FG_API const char* fg_report_text(const fg_report* report);
/* Files the caller should write (density or histogram CSV). */
FG_API size_t fg_report_file_count(const fg_report* report);
FG_API const char* fg_report_file_path(const fg_report* report, size_t i);
FG_API const char* fg_report_file_content(const fg_report* report, size_t i);
FG_API void fg_report_free(fg_report* report);

#ifdef __cplusplus
}
#endif

#endif
