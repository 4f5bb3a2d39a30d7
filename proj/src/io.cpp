#include "bzt/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "bzt/error.hpp"

namespace bzt {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep it a JSON float so readers do not narrow to integers.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void emit(std::string& out, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(indent * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(indent * depth, ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += sep;
        emit(out, it.value(), indent, depth + 1);
      }
      out += close;
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        emit(out, v, indent, depth + 1);
      }
      out += close;
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

json vec_json(const std::vector<double>& v) { return json(v); }

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cli", "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "cli", "write to '" + path + "' failed");
}

json to_json(const NondimParams& p) {
  return {{"mu1", p.mu1}, {"mu2", p.mu2}, {"mu3", p.mu3}, {"alpha", p.alpha},
          {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}};
}

json to_json(const ChemKinetics& k) {
  return {{"k1", k.k1}, {"k2", k.k2}, {"k3", k.k3}, {"k4", k.k4}, {"k5", k.k5},
          {"a", k.a}, {"b", k.b}, {"gamma", k.gamma}, {"sigma1", k.sigma1},
          {"sigma2", k.sigma2}, {"sigma3", k.sigma3}, {"length", k.length}};
}

json to_json(const SteadyState& s) {
  return {{"u1", s.u1}, {"u2", s.u2}, {"u3", s.u3}, {"sigma", s.sigma}};
}

json to_json(const RegionBox& b) { return {{"a1", b.a1}, {"a2", b.a2}, {"a3", b.a3}}; }

json to_json(const Domain& d) {
  return {{"kind", to_string(d.kind)}, {"lengths", vec_json(d.lengths)}, {"mode_cap", d.mode_cap}};
}

json to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

json to_json(const CriticalNumbers& c) {
  json j = {{"a", c.abc.a}, {"b", c.abc.b}, {"c", c.abc.c}, {"p", c.abc.p}, {"q", c.abc.q}};
  j["delta0"] = c.delta0 ? json(*c.delta0) : json(nullptr);
  if (c.d1) {
    j["delta1"] = {{"value", c.d1->delta1}, {"k0", c.d1->k0}, {"rho_k0", c.d1->rho_k0},
                   {"continuous_max", c.d1->continuous_max},
                   {"continuous_rho", c.d1->continuous_rho}};
  } else {
    j["delta1"] = nullptr;
  }
  j["scenario"] = to_string(c.scenario);
  j["degenerate"] = c.degenerate;
  return j;
}

json to_json(const HopfChain& c) {
  const auto& t = c.printed;
  json j;
  j["sigma"] = c.sigma;
  j["delta0"] = c.delta0;
  j["A"] = c.A;
  j["B"] = c.B;
  j["C"] = c.C;
  j["rho"] = c.rho;
  j["vectors"] = {{"xi", to_json(c.xi)}, {"eta", to_json(c.eta)},
                  {"xi_star", to_json(c.xi_star)}, {"eta_star", to_json(c.eta_star)},
                  {"zeta", to_json(c.zeta)}, {"zeta_star", to_json(c.zeta_star)},
                  {"zeta_printed", to_json(c.zeta_printed)}};
  j["inner_products"] = {{"xi_xis", c.xi_xis}, {"xi_etas", c.xi_etas},
                         {"eta_xis", c.eta_xis}, {"eta_etas", c.eta_etas}};
  j["D"] = {{"D0", c.D0}, {"D1", c.D1}, {"D2", c.D2}, {"Dsq", c.Dsq}};
  j["F"] = {{"F1", c.F1}, {"F2", c.F2}, {"F3", c.F3}};
  j["coefficients"] = {{"a20", c.a20}, {"a11", c.a11}, {"a02", c.a02}, {"a30", c.a30},
                       {"a21", c.a21}, {"a12", c.a12}, {"a03", c.a03}, {"b20", c.b20},
                       {"b11", c.b11}, {"b02", c.b02}, {"b30", c.b30}, {"b21", c.b21},
                       {"b12", c.b12}, {"b03", c.b03}};
  j["b1"] = c.b1;
  j["b1_scale"] = c.b1_scale;
  j["residuals"] = {{"eigen", c.res_eigen}, {"adjoint", c.res_adjoint}, {"zeta", c.res_zeta},
                    {"zeta_star", c.res_zeta_star}, {"zeta_printed", c.res_zeta_printed}};
  j["printed_table"] = {
      {"D0", t.D0}, {"D1", t.D1}, {"D2", t.D2}, {"D3", t.D3}, {"D4", t.D4}, {"D5", t.D5},
      {"D6", t.D6}, {"D7", t.D7}, {"D8", t.D8}, {"E", t.E}, {"H1", t.H1}, {"H2", t.H2},
      {"F1", t.F1}, {"F2", t.F2}, {"F3", t.F3}, {"xi_xis", t.xi_xis}, {"xi_etas", t.xi_etas},
      {"a20", t.a20}, {"a11", t.a11}, {"b20", t.b20}, {"b11", t.b11}, {"a30", t.a30},
      {"a12", t.a12}, {"b03", t.b03}, {"b21", t.b21}, {"b1_list", t.b1_list},
      {"b1_display", t.b1_display}};
  return j;
}

json to_json(const SteadyChain& c) {
  json j;
  j["k0"] = c.k0;
  j["j"] = c.j;
  j["multi_index"] = c.multi_index;
  j["rho"] = c.rho;
  j["rho_j"] = c.rho_j;
  j["delta1"] = c.delta1;
  j["length"] = c.length;
  j["R"] = c.R;
  j["xi"] = to_json(c.xi);
  j["xi_star"] = to_json(c.xi_star);
  j["residuals"] = {{"xi", c.res_xi}, {"xi_star", c.res_xi_star}, {"phi", c.phi_residual}};
  j["b0"] = c.b0;
  j["b0_projection"] = c.b0_projection;
  j["cube_condition"] = c.cube_condition;
  j["C_const"] = c.Cconst;
  if (c.cube_condition) {
    j["G_xi"] = to_json(c.G_xi);
    j["phi0"] = to_json(c.phi0);
    j["phij"] = to_json(c.phij);
    j["det_M1"] = c.det_M1;
    j["det_Mj"] = c.det_Mj;
    j["int_phi_e2"] = to_json(c.int_phi_e2);
    j["xi_xis"] = c.xi_xis;
    j["xi_xis_printed"] = c.xi_xis_printed;
    j["mean_square"] = c.mean_square;
    j["b1"] = c.b1;
    j["b1_scale"] = c.b1_scale;
  }
  return j;
}

json to_json(const TransitionReport& r) {
  json coeffs = json::object();
  for (const auto& [k, v] : r.coefficients) coeffs[k] = v;
  json dirs = json::array();
  for (const auto& v : r.amplitude.eigendirection) dirs.push_back(to_json(v));
  return {{"scenario", to_string(r.scenario)},
          {"critical_delta", r.critical_delta},
          {"coefficients", coeffs},
          {"classification", to_string(r.classification)},
          {"side", to_string(r.side)},
          {"branch_stability", r.branch_stability},
          {"amplitude",
           {{"prefactor_rule", r.amplitude.prefactor_rule},
            {"coefficient", r.amplitude.coefficient},
            {"coefficient_printed", r.amplitude.coefficient_printed},
            {"eigendirection", dirs},
            {"mode", r.amplitude.mode}}}};
}

json to_json(const CycleDiagnostics& d) {
  return {{"status", to_string(d.status)}, {"converged", d.converged}, {"period", d.period},
          {"amplitude", vec_json(d.amplitude)}, {"transient_time", d.transient_time},
          {"crossings", d.crossings}};
}

namespace {

// Rows in original variables, shared by both exporters.
template <class Row>
void for_each_row(const Trajectory& tr, Row&& row) {
  const int nn = tr.nodes();
  const std::size_t dims = tr.grid.size();
  std::vector<double> r;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    const auto& x = tr.x[k];
    if (dims == 0) {
      r = {tr.t[k], x[0] + tr.offset(0), x[1] + tr.offset(1), x[2] + tr.offset(2)};
      row(r);
      continue;
    }
    for (int n = 0; n < nn; ++n) {
      r.clear();
      r.push_back(tr.t[k]);
      if (dims == 1) {
        r.push_back(n * tr.lengths[0] / (tr.grid[0] - 1));
      } else {
        const int ny = tr.grid[1];
        r.push_back((n / ny) * tr.lengths[0] / (tr.grid[0] - 1));
        r.push_back((n % ny) * tr.lengths[1] / (tr.grid[1] - 1));
      }
      for (int s = 0; s < 3; ++s) r.push_back(x[s * nn + n] + tr.offset(s));
      row(r);
    }
  }
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  switch (tr.grid.size()) {
    case 0: os << "t,u1,u2,u3\n"; break;
    case 1: os << "t,x,u1,u2,u3\n"; break;
    default: os << "t,x,y,u1,u2,u3\n"; break;
  }
  char buf[40];
  for_each_row(tr, [&](const std::vector<double>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      if (i) os << ',';
      os << buf;
    }
    os << '\n';
  });
}

void write_trajectory_binary(const std::string& path, const Trajectory& tr) {
  static_assert(std::endian::native == std::endian::little, "binary export assumes little-endian host");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cli", "cannot open '" + path + "' for writing");
  const char magic[8] = {'B', 'Z', 'T', 'R', 'A', 'J', 0, 0};
  const std::uint32_t version = 1;
  const std::uint32_t ncols = static_cast<std::uint32_t>(4 + tr.grid.size());
  f.write(magic, 8);
  f.write(reinterpret_cast<const char*>(&version), 4);
  f.write(reinterpret_cast<const char*>(&ncols), 4);
  for_each_row(tr, [&](const std::vector<double>& r) {
    f.write(reinterpret_cast<const char*>(r.data()), static_cast<std::streamsize>(r.size() * sizeof(double)));
  });
  if (!f) throw Error(ErrorCode::IoError, "cli", "write to '" + path + "' failed");
}

}  // namespace bzt
