/* C interface to the deformed-oscillator tomography library.
 *
 * All functions return qt_status; QT_OK is 0.  On failure the thread-local
 * message from qt_last_error_message() describes what went wrong.  Objects
 * returned through out-parameters are owned by the caller and released with
 * the matching *_free function; out-parameters are left untouched on failure.
 */
#ifndef QTOMO_C_H
#define QTOMO_C_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qt_status {
  QT_OK = 0,
  QT_ERR_INVALID_ARGUMENT = 1,
  QT_ERR_DIVERGENT_AMPLITUDE = 2,
  QT_ERR_DEGENERATE_STATE = 3,
  QT_ERR_TRUNCATION_OVERFLOW = 4,
  QT_ERR_ORDER_TOO_HIGH = 5,
  QT_ERR_INCOMPLETE_TABLE = 6,
  QT_ERR_ILL_CONDITIONED = 7,
  QT_ERR_DEGENERATE_ANGLES = 8,
  QT_ERR_INSUFFICIENT_RULE = 9,
  QT_ERR_EIGEN_FAILURE = 10,
  QT_ERR_INCOMPATIBLE_GRID = 11,
  QT_ERR_IO = 12,
  QT_ERR_UNKNOWN = 13
} qt_status;

typedef enum qt_state_kind {
  QT_STATE_COHERENT = 0,
  QT_STATE_CAT_EVEN = 1,
  QT_STATE_CAT_ODD = 2,
  QT_STATE_TAO_EVEN = 3,
  QT_STATE_TAO_ODD = 4,
  QT_STATE_SQUEEZED_VACUUM = 5,
  QT_STATE_SQUEEZED_EXCITED = 6,
  QT_STATE_NUMBER = 7
} qt_state_kind;

/* Which fields matter depends on kind: alpha for coherent/cat, xi for the
 * two-photon eigenstates, r/phi_s for squeezed, n for number states. */
typedef struct qt_state_spec {
  int kind; /* qt_state_kind */
  double alpha_re, alpha_im;
  double r, phi_s;
  double xi_re, xi_im;
  int n;
} qt_state_spec;

typedef struct qt_state qt_state;
typedef struct qt_grid qt_grid;
typedef struct qt_table qt_table;

const char* qt_status_name(qt_status status);
const char* qt_last_error_message(void);
void qt_string_free(char* s);

/* Half-width L of the quadrature support for deformation parameter q. */
qt_status qt_support_bound(double q, double* out);

/* States ------------------------------------------------------------- */
qt_status qt_state_create(double q, const qt_state_spec* spec, double eps_trunc,
                          qt_state** out);
void qt_state_free(qt_state* s);
qt_status qt_state_cutoff(const qt_state* s, int* out);
qt_status qt_state_amplitude(const qt_state* s, int n, double* re, double* im);
/* Normally ordered moment of the state itself, no tomogram involved. */
qt_status qt_state_moment(const qt_state* s, int alpha, int beta, double* re,
                          double* im);
/* format is "csv" or "json"; config_echo may be NULL or a one-line JSON
 * string echoed into the file header. */
qt_status qt_state_write(const qt_state* s, const char* path,
                         const char* format, const char* config_echo);

/* Tomogram grids ------------------------------------------------------ */
/* xgrid is "gauss" (abscissas and weights of a Gauss rule of order n_x) or
 * "uniform" (open uniform abscissas inside the support). */
qt_status qt_grid_create(const qt_state* s, int n_theta, int n_x,
                         const char* xgrid, qt_grid** out);
void qt_grid_free(qt_grid* g);
qt_status qt_grid_dims(const qt_grid* g, int* n_theta, int* n_x);
qt_status qt_grid_theta(const qt_grid* g, int i, double* out);
qt_status qt_grid_x(const qt_grid* g, int j, double* out);
qt_status qt_grid_value(const qt_grid* g, int i, int j, double* out);
qt_status qt_grid_q(const qt_grid* g, double* out);
qt_status qt_grid_write(const qt_grid* g, const char* path, const char* format,
                        const char* config_echo);
/* Reads CSV or JSON grid files.  fallback_q applies when the file carries no
 * q metadata; a conflicting metadata q is QT_ERR_INCOMPATIBLE_GRID. */
qt_status qt_grid_read(const char* path, double fallback_q, qt_grid** out);

/* Moment tables ------------------------------------------------------- */
qt_status qt_table_from_state_direct(const qt_state* s, int gamma_max,
                                     qt_table** out);
/* Retrieval through the state's own tomogram; rule_order 0 picks a rule with
 * headroom over the integrand degree. */
qt_status qt_table_extract_from_state(const qt_state* s, int gamma_max,
                                      int rule_order, qt_table** out);
/* Retrieval from sampled data; interp_error (may be NULL) receives the
 * leave-one-out estimate of the x-interpolation error. */
qt_status qt_table_extract_from_grid(const qt_grid* g, int gamma_max,
                                     int rule_order, double* interp_error,
                                     qt_table** out);
void qt_table_free(qt_table* t);
qt_status qt_table_gamma_max(const qt_table* t, int* out);
qt_status qt_table_entry(const qt_table* t, int alpha, int beta, double* re,
                         double* im);
/* reference may be NULL; when given, per-entry reference values and absolute
 * errors are written alongside. */
qt_status qt_table_write(const qt_table* t, const qt_table* reference,
                         const char* path, const char* format,
                         const char* config_echo);

/* Verification --------------------------------------------------------- */
/* Runs every invariant suite.  inject_qint_error != 0 perturbs the deformed
 * integers first (sabotage self-test; the suites must then fail).
 * json_out_path may be NULL.  report_text (qt_string_free) receives the
 * human-readable report; all_passed receives 1 or 0. */
qt_status qt_verify_run(double inject_qint_error, const char* json_out_path,
                        char** report_text, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* QTOMO_C_H */
