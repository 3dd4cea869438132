#pragma once

#include <optional>
#include <string>

#include "moments.hpp"
#include "states.hpp"
#include "tomography.hpp"

namespace qtomo {

// %.17g: lossless double round trip, lowercase scientific where needed.
std::string format_double(double v);

// Grid files.  CSV: optional "# config: {json}" comment, then exactly the
// header "theta,x,omega" and theta-outer row-major rows.  JSON: meta object
// (q, provenance, optional echoed config) plus thetas/xs/values and, when
// the X axis is a Gauss rule, x_weights.
void write_grid_csv(const TomogramGrid& g, const std::string& path,
                    const std::string& config_echo = "");
void write_grid_json(const TomogramGrid& g, const std::string& path,
                     const std::string& config_echo = "");

// Reads either format (dispatch on leading '{').  q metadata is taken from
// the file when present (JSON meta, or the CSV config comment); otherwise
// fallback_q applies.  A metadata q conflicting with fallback_q is an
// IncompatibleGrid error.
TomogramGrid read_grid(const std::string& path, double fallback_q);

// Amplitude dumps: rows n, Re c_n, Im c_n, |c_n|².
void write_state_csv(const FockState& s, const std::string& path,
                     const std::string& config_echo = "");
void write_state_json(const FockState& s, const std::string& path,
                      const std::string& config_echo = "");

// Moment tables: rows alpha, beta, re, im, plus the direct-moment reference
// columns and absolute error when a reference table is supplied.
void write_moments_csv(const MomentTable& t, const MomentTable* reference,
                       const std::string& path,
                       const std::string& config_echo = "");
void write_moments_json(const MomentTable& t, const MomentTable* reference,
                        const std::string& path,
                        const std::string& config_echo = "");

}  // namespace qtomo
