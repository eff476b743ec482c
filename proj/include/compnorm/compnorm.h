#ifndef COMPNORM_H
#define COMPNORM_H

/* C interface to libcompnorm. All handles are opaque; every call that can
 * fail returns a cn_status and leaves a message for cn_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(COMPNORM_BUILDING_DLL)
#define COMPNORM_API __declspec(dllexport)
#else
#define COMPNORM_API __declspec(dllimport)
#endif
#else
#define COMPNORM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cn_status {
  CN_OK = 0,
  CN_ERR_SYNTAX = 1,
  CN_ERR_DOMAIN = 2,
  CN_ERR_NOT_SELF_MAP = 3,
  CN_ERR_SINGULAR_BOUNDARY_POINT = 4,
  CN_ERR_PRECISION_LOSS = 5,
  CN_ERR_BOUNDARY_ROOT_SUSPECTED = 6,
  CN_ERR_REGION_OUTSIDE_DOMAIN = 7,
  CN_ERR_NONCONVERGENT_ROOT = 8,
  CN_ERR_CERTIFICATION_MISMATCH = 9,
  CN_ERR_INFINITE_VALUE = 10,
  CN_ERR_NO_CONVERGENCE = 11,
  CN_ERR_TRUNCATION_TOO_LOOSE = 12,
  CN_ERR_RESOLUTION_EXCEEDED = 13,
  CN_ERR_INVALID_ARGUMENT = 14,
  CN_ERR_IO = 15,
  CN_ERR_INTERNAL = 16
} cn_status;

typedef enum cn_format { CN_FORMAT_JSON = 0, CN_FORMAT_CSV = 1 } cn_format;

typedef struct cn_map cn_map;
typedef struct cn_result cn_result;
typedef struct cn_measure cn_measure;

typedef struct cn_config {
  double abs_tol;      /* quadrature */
  double rel_tol;
  long max_nodes;
  double angle_scale;  /* angles at radius r: clamp(scale/(1-r), min_angles, max_angles) */
  int min_angles;
  int max_angles;
  double preimage_tol;
  int kmax;            /* default schedule r_k = 1 - 2^-k, k = 1..kmax */
  int carleson;        /* nonzero: add the Carleson window section to analyze reports */
  int carleson_atoms;
  int has_seed;        /* nonzero: Carleson atoms drawn with the seeded sampler */
  uint64_t seed;
  int timing;          /* nonzero: record runtime_seconds (otherwise 0, keeping output byte-stable) */
} cn_config;

COMPNORM_API const char* cn_version(void);
COMPNORM_API const char* cn_status_name(cn_status status);
/* Message of the last failing call on this thread ("" if none). */
COMPNORM_API const char* cn_last_error(void);
COMPNORM_API const char* cn_grammar(void);
COMPNORM_API void cn_config_default(cn_config* config);

COMPNORM_API cn_status cn_map_parse(const char* spec, cn_map** out);
COMPNORM_API void cn_map_free(cn_map* map);
COMPNORM_API cn_status cn_map_eval(const cn_map* map, double re, double im, double* out_re, double* out_im);
/* Canonical spec text. Writes at most cap bytes including the terminator; *needed gets the full size. */
COMPNORM_API cn_status cn_map_canonical(const cn_map* map, char* buf, size_t cap, size_t* needed);
COMPNORM_API cn_status cn_counting_function(const cn_map* map, double re, double im, double* out);
COMPNORM_API cn_status cn_poisson_transform(const cn_map* map, double re, double im, const cn_config* config,
                                            double* out);

/* Report producers. config may be NULL for defaults; radii may be NULL to use the kmax schedule. */
COMPNORM_API cn_status cn_validate(const char* spec, cn_result** out);
COMPNORM_API cn_status cn_counting_profile(const cn_map* map, const double* radii, size_t n_radii,
                                           const cn_config* config, cn_result** out);
COMPNORM_API cn_status cn_integral_profile(const cn_map* map, const double* radii, size_t n_radii,
                                           const cn_config* config, cn_result** out);
COMPNORM_API cn_status cn_identity_check(const cn_map* map, double radius, const cn_config* config,
                                         cn_result** out);
COMPNORM_API cn_status cn_carleson(const cn_map* map, const double* h, size_t n_h, const double* radii,
                                   size_t n_radii, const cn_config* config, cn_result** out);
COMPNORM_API cn_status cn_analyze(const cn_map* map, const double* radii, size_t n_radii, const cn_config* config,
                                  cn_result** out);
COMPNORM_API cn_status cn_catalog(cn_result** out);

COMPNORM_API void cn_result_free(cn_result* result);
/* Serialized text owned by the result. */
COMPNORM_API const char* cn_result_text(const cn_result* result, cn_format format);
COMPNORM_API cn_status cn_result_write(const cn_result* result, cn_format format, const char* path);
/* Nonzero when some value is flagged (non-convergence, per-radius errors, rejected map). */
COMPNORM_API int cn_result_has_flags(const cn_result* result);
/* Verdict name for analyze results, NULL otherwise. */
COMPNORM_API const char* cn_result_verdict(const cn_result* result);
COMPNORM_API cn_status cn_result_scalar(const cn_result* result, const char* name, double* out);

COMPNORM_API cn_status cn_measure_induced(const cn_map* map, int n_atoms, cn_measure** out);
COMPNORM_API cn_status cn_measure_read_csv(const char* path, cn_measure** out);
COMPNORM_API cn_status cn_measure_write_csv(const cn_measure* measure, const char* path);
COMPNORM_API size_t cn_measure_size(const cn_measure* measure);
COMPNORM_API cn_status cn_measure_poisson(const cn_measure* measure, double re, double im, double* out);
COMPNORM_API cn_status cn_measure_window_mass(const cn_measure* measure, double h, double theta0, double* out);
COMPNORM_API void cn_measure_free(cn_measure* measure);

#ifdef __cplusplus
}
#endif

#endif
