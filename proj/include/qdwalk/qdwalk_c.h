/*
 * C API for the qdwalk library.
 *
 * An experiment run is created from a JSON configuration string, owns its
 * output files and manifest in memory, and is freed by the caller. All
 * entry points return QDW_OK or an error code; qdw_last_error() gives a
 * thread-local message for the most recent failure on this thread.
 */

#ifndef QDWALK_C_H
#define QDWALK_C_H

#include <stddef.h>

#if defined(_WIN32)
#define QDW_API __declspec(dllexport)
#else
#define QDW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
    QDW_OK = 0,
    QDW_ERR_USAGE = 1,    /* malformed configuration or arguments */
    QDW_ERR_DOMAIN = 2,   /* values outside an operation's contract */
    QDW_ERR_INTERNAL = 3, /* unexpected failure */
    QDW_ERR_RANGE = 4     /* index or buffer out of range */
};

typedef struct qdw_run qdw_run; /* opaque experiment handle */

QDW_API const char* qdw_version(void);

/* Message for the last failing call on this thread; empty string if none. */
QDW_API const char* qdw_last_error(void);

/*
 * Runs the experiment described by config_json (keys: subcommand, q, n,
 * ball, K, levy, steps, paths, seed, format, m, variant, p2s,
 * asymptotics, ...). On success *out owns the results; a run whose checks
 * fail still returns QDW_OK -- inspect qdw_run_passed.
 */
QDW_API int qdw_run_create(const char* config_json, qdw_run** out);
QDW_API void qdw_run_destroy(qdw_run* run);

/* 1 when every requested check passed, else 0. */
QDW_API int qdw_run_passed(const qdw_run* run);

/* JSON manifest (tool_version, config, results[], hash); owned by run. */
QDW_API const char* qdw_run_manifest(const qdw_run* run);

QDW_API int qdw_run_file_count(const qdw_run* run, size_t* count);
QDW_API int qdw_run_file_name(const qdw_run* run, size_t index, const char** name);
QDW_API int qdw_run_file_content(const qdw_run* run, size_t index,
                                 const char** data, size_t* size);

/*
 * Scalar convenience: the q-integer [n]_q as a decimal string ("p/r" q
 * strings compute exactly and print the rational). Writes at most buflen
 * bytes including the terminator.
 */
QDW_API int qdw_q_int(int n, const char* q, char* buf, size_t buflen);

#ifdef __cplusplus
}
#endif

#endif /* QDWALK_C_H */
