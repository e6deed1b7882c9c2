#ifndef CIB_H
#define CIB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CibDimension {
  CIB_DIMENSION_DIMENSIONLESS = 0,
  CIB_DIMENSION_LENGTH = 1,
  CIB_DIMENSION_MASS = 2,
  CIB_DIMENSION_TIME = 3,
  CIB_DIMENSION_CHARGE = 4,
} CibDimension;

/**
 * Which probe models a report covers.
 */
typedef enum CibModels {
  CIB_MODELS_DISPLACEMENT = 0,
  CIB_MODELS_PHASE = 1,
  CIB_MODELS_BOTH = 2,
} CibModels;

/**
 * Numeric fields of a bounds report.
 */
typedef enum CibReportField {
  CIB_REPORT_FIELD_ONE_WAY_TA_TB_MIN = 0,
  CIB_REPORT_FIELD_ROUND_TRIP_TA_TB_MIN = 1,
  CIB_REPORT_FIELD_TB_DISPLACEMENT = 2,
  CIB_REPORT_FIELD_TA_MIN_ROUND_TRIP = 3,
  CIB_REPORT_FIELD_TA_MIN_ONE_WAY = 4,
  CIB_REPORT_FIELD_R_MAX_DISPLACEMENT = 5,
  CIB_REPORT_FIELD_TB_PHASE_EXACT = 6,
  CIB_REPORT_FIELD_TB_PHASE_APPROX = 7,
  CIB_REPORT_FIELD_R_MAX_PHASE = 8,
  CIB_REPORT_FIELD_MA_OVER_MP = 9,
  CIB_REPORT_FIELD_MB_OVER_MP = 10,
  CIB_REPORT_FIELD_MASS_PRODUCT_OVER_MP2 = 11,
  CIB_REPORT_FIELD_COUPLING_STRENGTH = 12,
} CibReportField;

/**
 * Boolean flags of a bounds report.
 */
typedef enum CibReportFlag {
  CIB_REPORT_FLAG_GEOMETRY_VALID = 0,
  CIB_REPORT_FLAG_DISPLACEMENT_BACKREACTION_FREE = 1,
  CIB_REPORT_FLAG_PHASE_BACKREACTION_FREE = 2,
  CIB_REPORT_FLAG_MA_MUCH_GREATER_THAN_PLANCK = 3,
  CIB_REPORT_FLAG_MB_MUCH_GREATER_THAN_PLANCK = 4,
  CIB_REPORT_FLAG_MASS_PRODUCT_MUCH_GREATER_THAN_PLANCK = 5,
  CIB_REPORT_FLAG_COUPLING_MUCH_GREATER_THAN_UNITY = 6,
} CibReportFlag;

/**
 * Status codes returned by every fallible call.
 */
typedef enum CibStatus {
  CIB_STATUS_OK = 0,
  CIB_STATUS_INVALID_INPUT = 1,
  CIB_STATUS_NO_CONVERGENCE = 2,
  CIB_STATUS_NULL_POINTER = 3,
  CIB_STATUS_MISSING_CONFINEMENT = 4,
  CIB_STATUS_GEOMETRY_OVERRIDE_REQUIRED = 5,
  CIB_STATUS_DIMENSION_MISMATCH = 6,
  CIB_STATUS_NOT_POSITIVE_DEFINITE = 7,
  CIB_STATUS_NOT_PURE = 8,
  /**
   * The requested report field was not computed for the chosen models.
   */
  CIB_STATUS_UNAVAILABLE = 9,
  CIB_STATUS_PANIC = 10,
} CibStatus;

/**
 * Opaque bounds report handle.
 */
typedef struct CibReport CibReport;

/**
 * Opaque scenario handle.
 */
typedef struct CibScenario CibScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL.
 *
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *cib_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cib_version(void);

/**
 * Create a gravitational scenario. Masses in m_P, lengths in l_P.
 */
enum CibStatus cib_scenario_new(double m_a,
                                double m_b,
                                double d,
                                double r,
                                struct CibScenario **out);

/**
 * Destroy a scenario. NULL is ignored.
 */
void cib_scenario_free(struct CibScenario *s);

/**
 * Switch to Coulomb coupling with charges in q_P.
 */
enum CibStatus cib_scenario_set_coulomb(struct CibScenario *s, double q_a, double q_b);

/**
 * Set the minimum trap confinement ΔX_min (l_P).
 */
enum CibStatus cib_scenario_set_delta_x_min(struct CibScenario *s, double dx);

enum CibStatus cib_scenario_set_r(struct CibScenario *s, double r);

/**
 * Allow the far-field formulas below the `R/d` threshold.
 */
enum CibStatus cib_scenario_set_override_validity(struct CibScenario *s, bool enabled);

/**
 * Build a feasibility report. Free it with [`cib_report_free`].
 */
enum CibStatus cib_report_new(const struct CibScenario *s,
                              enum CibModels which,
                              struct CibReport **out);

void cib_report_free(struct CibReport *r);

/**
 * Read one numeric field. Returns `Unavailable` when the field's model was
 * not part of the report.
 */
enum CibStatus cib_report_get(const struct CibReport *r, enum CibReportField field, double *out);

enum CibStatus cib_report_flag(const struct CibReport *r, enum CibReportFlag flag, bool *out);

/**
 * Maximize the η objective; writes η* and the coefficient (16/27).
 */
enum CibStatus cib_optimize_eta(double *eta_star, double *coefficient);

/**
 * Round-trip no-signalling verdict for one schedule (Planck times).
 */
enum CibStatus cib_check_no_signalling(double r,
                                       double t_a,
                                       double t_b,
                                       bool non_strict,
                                       bool *ok,
                                       double *margin);

enum CibStatus cib_tb_displacement(const struct CibScenario *s, double *out);

/**
 * Phase-model measurement time; `exact` selects the unexpanded form.
 */
enum CibStatus cib_tb_phase(const struct CibScenario *s, bool exact, double *out);

/**
 * Gaussian-oracle time for the probe overlap to fall to `eps`.
 */
enum CibStatus cib_orthogonalization_time(const struct CibScenario *s,
                                          double sigma0,
                                          double eps,
                                          double *out);

/**
 * Convert an SI value to Planck units.
 */
enum CibStatus cib_to_planck(double value_si, enum CibDimension dim, double *out);

/**
 * Convert a Planck-normalized value to SI.
 */
enum CibStatus cib_from_planck(double value, enum CibDimension dim, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIB_H */
