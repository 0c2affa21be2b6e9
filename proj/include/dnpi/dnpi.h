/* Apache License, Version 2.0, refer to LICENSE.txt */

#ifndef DNPI_DNPI_H
#define DNPI_DNPI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DNPI_API __declspec(dllexport)
#else
#define DNPI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define DNPI_VERSION "0.1.0"

/* Every fallible call returns one of these. On failure the message of the
   calling thread's last error is available from dnpi_last_error(). */
typedef enum dnpi_status {
  DNPI_OK = 0,
  DNPI_ERR_ARGUMENT = 1, /* null pointer, bad flag value */
  DNPI_ERR_DOMAIN = 2,   /* input outside an operation's domain */
  DNPI_ERR_INGEST = 3,   /* unreadable file, malformed CSV / schema / model */
  DNPI_ERR_IO = 4,       /* cannot write an output */
  DNPI_ERR_MISMATCH = 5, /* oracle check found disagreements */
  DNPI_ERR_INTERNAL = 6
} dnpi_status;

typedef struct dnpi_dataset dnpi_dataset;
typedef struct dnpi_tree dnpi_tree;
typedef struct dnpi_report dnpi_report;

DNPI_API const char* dnpi_version(void);
DNPI_API const char* dnpi_last_error(void);
/* Short lowercase token for a status, e.g. "ingest". */
DNPI_API const char* dnpi_status_name(int status);
/* Releases strings returned through char** out-parameters. */
DNPI_API void dnpi_string_free(char* s);

/* ---- datasets ---- */

typedef struct dnpi_csv_options {
  const char* class_column;   /* NULL or "": last column */
  const char* missing_marker; /* NULL: "?" */
  const char* schema_path;    /* NULL: infer types and labels */
  int require_class;          /* nonzero: every row needs a label */
  int force_categorical;      /* nonzero: never infer numeric columns */
} dnpi_csv_options;

DNPI_API void dnpi_csv_options_init(dnpi_csv_options* options);
DNPI_API int dnpi_dataset_load_csv(const char* path, const dnpi_csv_options* options,
                                   dnpi_dataset** out);
/* Loads rows to be scored by `tree`, using the tree's attribute and class
   labels as the schema. Class labels may be absent or missing. */
DNPI_API int dnpi_dataset_load_for_tree(const char* path, const dnpi_tree* tree,
                                        const char* missing_marker, dnpi_dataset** out);
DNPI_API void dnpi_dataset_free(dnpi_dataset* dataset);

DNPI_API size_t dnpi_dataset_rows(const dnpi_dataset* dataset);
DNPI_API size_t dnpi_dataset_num_attributes(const dnpi_dataset* dataset);
/* Pointer valid until the dataset is modified or freed. */
DNPI_API const char* dnpi_dataset_name(const dnpi_dataset* dataset);
DNPI_API const char* dnpi_dataset_attribute_name(const dnpi_dataset* dataset, size_t attribute);
DNPI_API int dnpi_dataset_attribute_is_numeric(const dnpi_dataset* dataset, size_t attribute);
DNPI_API size_t dnpi_dataset_attribute_arity(const dnpi_dataset* dataset, size_t attribute);
DNPI_API size_t dnpi_dataset_num_classes(const dnpi_dataset* dataset);
DNPI_API const char* dnpi_dataset_class_label(const dnpi_dataset* dataset, size_t label);
/* Class code of a row, -1 when missing. */
DNPI_API int dnpi_dataset_row_label(const dnpi_dataset* dataset, size_t row);
DNPI_API size_t dnpi_dataset_missing_cells(const dnpi_dataset* dataset);

/* In-place preprocessing. */
DNPI_API int dnpi_dataset_impute(dnpi_dataset* dataset);
DNPI_API int dnpi_dataset_discretize(dnpi_dataset* dataset, const char* attribute, size_t bins);
DNPI_API int dnpi_dataset_binarize(dnpi_dataset* dataset, const char* attribute,
                                   double* threshold, double* gain_ratio, double* information_gain);
/* Writes the CSV and, when schema_path is non-NULL, the schema sidecar with
   `provenance_json` embedded under "provenance". */
DNPI_API int dnpi_dataset_write(const dnpi_dataset* dataset, const char* csv_path,
                                const char* schema_path, const char* provenance_json);

/* ---- trees ---- */

typedef struct dnpi_build_params {
  size_t min_split;      /* >= 2 */
  const char* algorithm; /* "dnpi" or "gain_ratio" */
} dnpi_build_params;

DNPI_API void dnpi_build_params_init(dnpi_build_params* params);
DNPI_API int dnpi_tree_train(const dnpi_dataset* dataset, const dnpi_build_params* params,
                             dnpi_tree** out);
DNPI_API int dnpi_tree_load(const char* path, dnpi_tree** out);
DNPI_API int dnpi_tree_save(const dnpi_tree* tree, const char* path, const char* metadata_json);
DNPI_API int dnpi_tree_to_json(const dnpi_tree* tree, const char* metadata_json, char** out);
DNPI_API void dnpi_tree_free(dnpi_tree* tree);

DNPI_API size_t dnpi_tree_size(const dnpi_tree* tree);
DNPI_API size_t dnpi_tree_depth(const dnpi_tree* tree);
DNPI_API size_t dnpi_tree_num_nodes(const dnpi_tree* tree);
DNPI_API size_t dnpi_tree_num_classes(const dnpi_tree* tree);
DNPI_API const char* dnpi_tree_class_label(const dnpi_tree* tree, size_t label);
/* Metadata object stored with a loaded model, "{}" for a trained one. */
DNPI_API const char* dnpi_tree_metadata(const dnpi_tree* tree);

/* Class codes for every row into predictions[0 .. rows). `accuracy` gets the
   share of correct predictions over labelled rows and `labelled` their count
   (accuracy is left untouched when no row is labelled). Either may be NULL. */
DNPI_API int dnpi_tree_predict(const dnpi_tree* tree, const dnpi_dataset* dataset,
                               size_t* predictions, size_t capacity, double* accuracy,
                               size_t* labelled);

/* ---- evaluation ---- */

typedef struct dnpi_cv_config {
  size_t folds;
  size_t repeats;
  uint64_t seed;
  int stratified;
  size_t threads;
} dnpi_cv_config;

DNPI_API void dnpi_cv_config_init(dnpi_cv_config* config);
DNPI_API dnpi_report* dnpi_report_new(void);
DNPI_API void dnpi_report_free(dnpi_report* report);
/* Runs repeated k-fold cross-validation and appends the result. */
DNPI_API int dnpi_cross_validate(const dnpi_dataset* dataset, const dnpi_build_params* params,
                                 const dnpi_cv_config* config, dnpi_report* report);
DNPI_API size_t dnpi_report_count(const dnpi_report* report);
/* Means over all folds and repeats of entry `index`. Outputs may be NULL. */
DNPI_API int dnpi_report_summary(const dnpi_report* report, size_t index, double* accuracy,
                                 double* in_sample, double* tree_size, size_t* fold_records);
/* metric: "accuracy", "in_sample" or "tree_size"; format: "text" or "json". */
DNPI_API int dnpi_report_table(const dnpi_report* report, const char* metric, const char* format,
                               char** out);
DNPI_API int dnpi_report_raw_log(const dnpi_report* report, const char* header_json, char** out);

/* Root-node split diagnostics: every attribute's CI interval against the
   no-attribute interval. format: "text" or "json". */
DNPI_API int dnpi_inspect_splits(const dnpi_dataset* dataset, const char* format, char** out);

typedef struct dnpi_oracle_config {
  size_t trials;
  size_t k_min;
  size_t k_max; /* <= 8 */
  int64_t max_count;
  size_t max_classes;
  uint64_t seed;
} dnpi_oracle_config;

DNPI_API void dnpi_oracle_config_init(dnpi_oracle_config* config);
/* Compares the greedy multinomial CI with vertex enumeration on random
   tables. Returns DNPI_ERR_MISMATCH when any table disagrees; `out` receives
   a JSON summary listing the offending tables either way. */
DNPI_API int dnpi_oracle_check(const dnpi_oracle_config* config, size_t* mismatches, char** out);

/* CI interval of one [category][class] table, row-major, as exact fractions
   ("num/den") plus doubles. Any output may be NULL. */
DNPI_API int dnpi_ci_interval(const int64_t* table, size_t categories, size_t classes,
                              char** lower, char** upper, double* lower_value,
                              double* upper_value);

#ifdef __cplusplus
}
#endif

#endif /* DNPI_DNPI_H */
