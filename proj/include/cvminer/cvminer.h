/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CVMINER_CVMINER_H
#define CVMINER_CVMINER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CVM_API __declspec(dllexport)
#else
#define CVM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle to a versioned resume corpus. */
typedef struct cvm_store cvm_store;

typedef enum cvm_status {
  CVM_OK = 0,
  CVM_ERR_INVALID_ARGUMENT = 1,
  CVM_ERR_IO = 2,
  CVM_ERR_NO_EXPERIENCE = 3,
  CVM_ERR_MALFORMED_DATE = 4,
  CVM_ERR_SCHEMA = 5,
  CVM_ERR_UNRESOLVED_RANK = 6,
  CVM_ERR_ZERO_SPAN = 7,
  CVM_ERR_EMPTY_CORPUS = 8,
  CVM_ERR_MISSING_CLASS = 9,
  CVM_ERR_ZERO_VECTOR = 10,
  CVM_ERR_UNKNOWN_RESUME = 11,
  CVM_ERR_INVALID_RANK = 12,
  CVM_ERR_BEFORE_CAREER_START = 13,
  CVM_ERR_ALL_FAILED = 14,
  CVM_ERR_STALE_VERSION = 15,
  CVM_ERR_INTERNAL = 100
} cvm_status;

/* Stable upper-case name of a status, e.g. "CVM_ERR_SCHEMA". */
CVM_API const char* cvm_status_name(cvm_status status);

/* Message of the last failure on the calling thread; "" after success. */
CVM_API const char* cvm_last_error(void);

/* Releases any string handed out through a char** parameter. */
CVM_API void cvm_string_free(char* s);

CVM_API const char* cvm_library_version(void);

/* root NULL or "" keeps the corpus in memory. */
CVM_API cvm_status cvm_store_open(const char* root, cvm_store** out);
CVM_API void cvm_store_close(cvm_store* store);
CVM_API uint64_t cvm_store_version(const cvm_store* store);

/*
 * Parses every *.txt under raw_dir into a fresh corpus version. lexicon_dir,
 * rules_file, exceptions_file and as_of ("YYYY-MM-DD") may be NULL for the
 * built-in English lexicon, the standard rank ladder and today's date.
 * report receives JSON: version, ingested ids, warnings and failures.
 */
CVM_API cvm_status cvm_ingest_dir(cvm_store* store, const char* raw_dir, const char* lexicon_dir,
                                  const char* rules_file, const char* exceptions_file, const char* as_of,
                                  char** report);

/* Feature vector of one resume as JSON {r, t, total_years, final_rank}. */
CVM_API cvm_status cvm_features(cvm_store* store, const char* id, char** json);

/* Lines "id<TAB>pattern" become expert labels; then the model is retrained. */
CVM_API cvm_status cvm_train_labels(cvm_store* store, const char* labels_file, char** json);

/* Predicted patterns for one resume, or all when id is NULL. */
CVM_API cvm_status cvm_classify(cvm_store* store, const char* id, char** json);

/* Mines explicit relations; out_path, when not NULL, receives edges.tsv. */
CVM_API cvm_status cvm_mine(cvm_store* store, size_t min_support, const char* out_path, char** json);

CVM_API cvm_status cvm_validate_text(cvm_store* store, const char* text, char** json);

CVM_API cvm_status cvm_mobility_at(cvm_store* store, const char* date, char** json);
CVM_API cvm_status cvm_mobility_animate(cvm_store* store, const char* from, const char* to, int steps,
                                        char** json);

/* Parses and quantifies one text with the built-in lexicon and rules. */
CVM_API cvm_status cvm_parse_text(const char* id, const char* text, char** document);

/* Writes resumes/, truth.tsv, planted_pairs.tsv and as_of.txt under out_dir. */
CVM_API cvm_status cvm_generate_synthetic(const char* out_dir, size_t n, uint64_t seed, double separation);

/*
 * One HTTP-style request against the service routes without a socket.
 * path may carry a query string. status receives the HTTP status.
 */
CVM_API cvm_status cvm_request(cvm_store* store, const char* method, const char* path, const char* body,
                               int* status, char** response);

/* Serves the HTTP API on "host:port" until the process ends. */
CVM_API cvm_status cvm_serve(cvm_store* store, const char* address);

#ifdef __cplusplus
}
#endif

#endif
