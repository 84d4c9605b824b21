// Copyright 2026 The conekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * conekit C interface.
 *
 * Every entry point returns a ck_status; on failure ck_last_error() holds a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with ck_string_free. Handles are opaque and
 * released with their *_free function; freeing NULL is a no-op.
 */

#ifndef CONEKIT_H
#define CONEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CONEKIT_BUILDING_LIBRARY)
#define CK_API __declspec(dllexport)
#else
#define CK_API __declspec(dllimport)
#endif
#else
#define CK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ck_status {
  CK_OK = 0,
  CK_ERR_PARSE = 1,
  CK_ERR_DIMENSION = 2,
  CK_ERR_PRECONDITION = 3,
  CK_ERR_CAP_EXCEEDED = 4,
  CK_ERR_UNSUPPORTED = 5,
  CK_ERR_CONVERGENCE = 6,
  CK_ERR_INTERNAL = 7,
  CK_ERR_ARGUMENT = 8
} ck_status;

typedef enum ck_verdict { CK_YES = 0, CK_NO = 1, CK_UNKNOWN = 2 } ck_verdict;

typedef struct ck_options {
  int exact; /* nonzero: rational arithmetic wherever the operands allow */
  double tol;
  uint64_t seed;
  int restarts;
  int iterations;
  int budget;
  size_t dd_cap;
  int samples;
} ck_options;

typedef struct ck_cone ck_cone;
typedef struct ck_system ck_system;
typedef struct ck_map ck_map;
typedef struct ck_report ck_report;

CK_API void ck_options_default(ck_options* opt);
CK_API const char* ck_version(void);
CK_API const char* ck_last_error(void);
CK_API void ck_string_free(char* s);
/* Input schemas and exit codes as plain text. */
CK_API ck_status ck_schema_text(char** out);

/* Subcommands: ck_command_name(i) for i < ck_command_count(), else NULL. */
CK_API size_t ck_command_count(void);
CK_API const char* ck_command_name(size_t i);

/* ---- runs and reports ---- */

CK_API ck_status ck_run(const char* command, const char* inputs_json, const ck_options* opt,
                        ck_report** out);
/* indent < 0 gives the compact form. */
CK_API ck_status ck_report_to_json(const ck_report* r, int indent, char** out);
CK_API ck_verdict ck_report_verdict(const ck_report* r);
/* 0 yes, 1 no, 2 unknown. */
CK_API int ck_report_exit_code(const ck_report* r);
CK_API void ck_report_free(ck_report* r);
/* Replays a stored report; *ok is 1 when digests and certificate check out. */
CK_API ck_status ck_verify_report_json(const char* report_json, int* ok, char** reason);

/* ---- cones ---- */

CK_API ck_status ck_cone_from_json(const char* json, ck_cone** out);
CK_API ck_status ck_cone_to_json(const ck_cone* c, char** out);
CK_API ck_status ck_cone_ambient(const ck_cone* c, size_t* out);
CK_API ck_status ck_cone_dual(const ck_cone* c, ck_cone** out);
CK_API ck_status ck_cone_min_tensor(const ck_cone* a, const ck_cone* b, const ck_options* opt,
                                    ck_cone** out);
CK_API ck_status ck_cone_max_tensor(const ck_cone* a, const ck_cone* b, const ck_options* opt,
                                    ck_cone** out);
/* x_json is an array of rationals; cert_json may be NULL. */
CK_API ck_status ck_cone_member(const ck_cone* c, const char* x_json, const ck_options* opt,
                                ck_verdict* verdict, char** cert_json);
CK_API void ck_cone_free(ck_cone* c);

/* ---- systems ---- */

CK_API ck_status ck_system_from_json(const char* json, ck_system** out);
CK_API ck_status ck_system_to_json(const ck_system* s, char** out);
CK_API ck_status ck_system_dual(const ck_system* s, ck_system** out);
CK_API void ck_system_free(ck_system* s);

/* ---- maps Her_d -> Her_t ---- */

CK_API ck_status ck_map_from_json(const char* json, ck_map** out);
CK_API ck_status ck_map_to_json(const ck_map* m, char** out);
CK_API ck_status ck_map_cp(const ck_map* m, const ck_options* opt, ck_verdict* verdict,
                           char** cert_json);
CK_API ck_status ck_map_choi_json(const ck_map* m, char** out);
CK_API void ck_map_free(ck_map* m);

#ifdef __cplusplus
}
#endif

#endif /* CONEKIT_H */
