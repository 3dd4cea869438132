#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qtomo {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::IoFailure, "cannot open for writing: " + path);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Single-line config comment; newlines inside the echo would corrupt the CSV.
void write_config_comment(std::ofstream& out, const std::string& echo) {
  if (echo.empty()) return;
  if (echo.find('\n') != std::string::npos)
    throw Error(ErrorCode::InvalidArgument,
                "config echo must be a single line");
  out << "# config: " << echo << "\n";
}

json meta_object(double q, const std::string& provenance,
                 const std::string& echo) {
  json meta;
  meta["q"] = q;
  if (!provenance.empty()) meta["provenance"] = provenance;
  if (!echo.empty()) {
    json cfg = json::parse(echo, nullptr, false);
    if (cfg.is_discarded())
      throw Error(ErrorCode::InvalidArgument, "config echo is not valid JSON");
    meta["config"] = cfg;
  }
  return meta;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}

double parse_double(const std::string& tok, const std::string& path) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::IoFailure,
                "malformed number '" + tok + "' in " + path);
  }
}

}  // namespace

void write_grid_csv(const TomogramGrid& g, const std::string& path,
                    const std::string& config_echo) {
  std::ofstream out = open_out(path);
  write_config_comment(out, config_echo);
  out << "theta,x,omega\n";
  for (size_t i = 0; i < g.thetas.size(); ++i)
    for (size_t j = 0; j < g.xs.size(); ++j)
      out << format_double(g.thetas[i]) << ',' << format_double(g.xs[j]) << ','
          << format_double(g.values(i, j)) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}

void write_grid_json(const TomogramGrid& g, const std::string& path,
                     const std::string& config_echo) {
  json doc;
  doc["meta"] = meta_object(g.d.q, g.provenance, config_echo);
  doc["thetas"] = g.thetas;
  doc["xs"] = g.xs;
  if (!g.x_weights.empty()) doc["x_weights"] = g.x_weights;
  json rows = json::array();
  for (size_t i = 0; i < g.thetas.size(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < g.xs.size(); ++j) row.push_back(g.values(i, j));
    rows.push_back(std::move(row));
  }
  doc["values"] = std::move(rows);
  write_text(path, doc.dump(2) + "\n");
}

namespace {

TomogramGrid grid_from_json(const json& doc, double fallback_q,
                            const std::string& path) {
  if (!doc.contains("thetas") || !doc.contains("xs") || !doc.contains("values"))
    throw Error(ErrorCode::IoFailure,
                "grid json missing thetas/xs/values: " + path);
  double q = fallback_q;
  std::string provenance = "file";
  if (doc.contains("meta")) {
    const json& meta = doc["meta"];
    if (meta.contains("q")) {
      q = meta["q"].get<double>();
      if (std::abs(q - fallback_q) > 1e-12)
        throw Error(ErrorCode::IncompatibleGrid,
                    "grid q = " + format_double(q) +
                        " does not match configured q = " +
                        format_double(fallback_q));
    }
    if (meta.contains("provenance"))
      provenance = meta["provenance"].get<std::string>();
  }
  TomogramGrid g{DeformationParam(q),
                 doc["thetas"].get<std::vector<double>>(),
                 doc["xs"].get<std::vector<double>>(),
                 {},
                 Eigen::MatrixXd(),
                 provenance};
  if (doc.contains("x_weights"))
    g.x_weights = doc["x_weights"].get<std::vector<double>>();
  const json& rows = doc["values"];
  if (rows.size() != g.thetas.size())
    throw Error(ErrorCode::IoFailure, "grid json row count mismatch: " + path);
  g.values.resize(g.thetas.size(), g.xs.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != g.xs.size())
      throw Error(ErrorCode::IoFailure,
                  "grid json column count mismatch: " + path);
    for (size_t j = 0; j < g.xs.size(); ++j)
      g.values(i, j) = rows[i][j].get<double>();
  }
  return g;
}

TomogramGrid grid_from_csv(const std::string& text, double fallback_q,
                           const std::string& path) {
  std::istringstream in(text);
  std::string line;
  double q = fallback_q;
  bool have_q_meta = false;
  bool header_seen = false;
  std::vector<double> thetas, xs;
  std::vector<double> flat;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# config: ";
      if (line.rfind(tag, 0) == 0) {
        json cfg = json::parse(line.substr(tag.size()), nullptr, false);
        if (!cfg.is_discarded() && cfg.contains("q")) {
          q = cfg["q"].get<double>();
          have_q_meta = true;
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != "theta,x,omega")
        throw Error(ErrorCode::IoFailure,
                    "grid csv header must be 'theta,x,omega': " + path);
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string tok;
    double vals[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, tok, ','))
        throw Error(ErrorCode::IoFailure, "short grid csv row in " + path);
      vals[c] = parse_double(tok, path);
    }
    if (std::getline(row, tok, ','))
      throw Error(ErrorCode::IoFailure, "extra grid csv column in " + path);
    if (thetas.empty() || vals[0] != thetas.back()) {
      if (!thetas.empty() && !flat.empty() &&
          flat.size() % xs.size() != 0)
        throw Error(ErrorCode::IoFailure, "ragged grid csv in " + path);
      thetas.push_back(vals[0]);
    }
    if (thetas.size() == 1) xs.push_back(vals[1]);
    flat.push_back(vals[2]);
  }
  if (!header_seen || thetas.empty() || xs.empty())
    throw Error(ErrorCode::IoFailure, "empty or headerless grid csv: " + path);
  if (flat.size() != thetas.size() * xs.size())
    throw Error(ErrorCode::IoFailure, "grid csv is not rectangular: " + path);
  if (have_q_meta && std::abs(q - fallback_q) > 1e-12)
    throw Error(ErrorCode::IncompatibleGrid,
                "grid q = " + format_double(q) +
                    " does not match configured q = " +
                    format_double(fallback_q));
  TomogramGrid g{DeformationParam(q), std::move(thetas), std::move(xs),
                 {},       Eigen::MatrixXd(),            "file"};
  g.values.resize(g.thetas.size(), g.xs.size());
  for (size_t i = 0; i < g.thetas.size(); ++i)
    for (size_t j = 0; j < g.xs.size(); ++j)
      g.values(i, j) = flat[i * g.xs.size() + j];
  return g;
}

}  // namespace

TomogramGrid read_grid(const std::string& path, double fallback_q) {
  const std::string text = read_file(path);
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
      throw Error(ErrorCode::IoFailure, "invalid json in " + path);
    return grid_from_json(doc, fallback_q, path);
  }
  return grid_from_csv(text, fallback_q, path);
}

void write_state_csv(const FockState& s, const std::string& path,
                     const std::string& config_echo) {
  std::ofstream out = open_out(path);
  write_config_comment(out, config_echo);
  out << "n,re,im,prob\n";
  for (int n = 0; n <= s.cutoff; ++n)
    out << n << ',' << format_double(s.amps[n].real()) << ','
        << format_double(s.amps[n].imag()) << ','
        << format_double(std::norm(s.amps[n])) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}

void write_state_json(const FockState& s, const std::string& path,
                      const std::string& config_echo) {
  json doc;
  doc["meta"] = meta_object(s.d.q, "", config_echo);
  doc["meta"]["cutoff"] = s.cutoff;
  doc["meta"]["eps_trunc"] = s.eps_trunc;
  json amps = json::array();
  for (int n = 0; n <= s.cutoff; ++n)
    amps.push_back({{"n", n},
                    {"re", s.amps[n].real()},
                    {"im", s.amps[n].imag()},
                    {"prob", std::norm(s.amps[n])}});
  doc["amplitudes"] = std::move(amps);
  write_text(path, doc.dump(2) + "\n");
}

namespace {

void moment_rows(const MomentTable& t, const MomentTable* reference,
                 const std::function<void(int, int, cplx, const cplx*)>& emit) {
  for (int g = 0; g <= t.gamma_max; ++g)
    for (int a = 0; a <= g; ++a) {
      const cplx v = t.at(a, g - a);
      if (reference) {
        const cplx ref = reference->at(a, g - a);
        emit(a, g - a, v, &ref);
      } else {
        emit(a, g - a, v, nullptr);
      }
    }
}

}  // namespace

void write_moments_csv(const MomentTable& t, const MomentTable* reference,
                       const std::string& path,
                       const std::string& config_echo) {
  std::ofstream out = open_out(path);
  write_config_comment(out, config_echo);
  out << (reference ? "alpha,beta,re,im,re_direct,im_direct,abs_err\n"
                    : "alpha,beta,re,im\n");
  moment_rows(t, reference, [&](int a, int b, cplx v, const cplx* ref) {
    out << a << ',' << b << ',' << format_double(v.real()) << ','
        << format_double(v.imag());
    if (ref)
      out << ',' << format_double(ref->real()) << ','
          << format_double(ref->imag()) << ','
          << format_double(std::abs(v - *ref));
    out << '\n';
  });
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}

void write_moments_json(const MomentTable& t, const MomentTable* reference,
                        const std::string& path,
                        const std::string& config_echo) {
  json doc;
  doc["meta"] = meta_object(t.d.q, "", config_echo);
  doc["meta"]["gamma_max"] = t.gamma_max;
  json entries = json::array();
  moment_rows(t, reference, [&](int a, int b, cplx v, const cplx* ref) {
    json e{{"alpha", a}, {"beta", b}, {"re", v.real()}, {"im", v.imag()}};
    if (ref) {
      e["re_direct"] = ref->real();
      e["im_direct"] = ref->imag();
      e["abs_err"] = std::abs(v - *ref);
    }
    entries.push_back(std::move(e));
  });
  doc["entries"] = std::move(entries);
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace qtomo
