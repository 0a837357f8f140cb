#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "covtrans/core.hpp"
#include "covtrans/fiducial.hpp"
#include "covtrans/groups.hpp"
#include "covtrans/matrix.hpp"
#include "covtrans/pairing.hpp"
#include "covtrans/repr.hpp"
#include "covtrans/signal.hpp"
#include "covtrans/xform.hpp"

namespace covtrans {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

inline json to_json(const AffinePoint& g) { return json{{"a", g.a}, {"b", g.b}}; }
inline AffinePoint affine_from_json(const json& j) {
  AffinePoint g{j.at("a").get<double>(), j.at("b").get<double>()};
  check_affine(g, "affine_from_json");
  return g;
}

inline json to_json(const Sl2Element& m) {
  return json{{"m", {{m.a, m.b}, {m.c, m.d}}}};
}
inline Sl2Element sl2_from_json(const json& j) {
  const auto& m = j.at("m");
  return make_sl2(m.at(0).at(0), m.at(0).at(1), m.at(1).at(0), m.at(1).at(1));
}

inline json to_json(const Su11Element& g) {
  return json{{"alpha", {g.alpha.real(), g.alpha.imag()}},
              {"beta", {g.beta.real(), g.beta.imag()}}};
}
inline Su11Element su11_from_json(const json& j) {
  return su11_renormalize({Complex{j.at("alpha").at(0), j.at("alpha").at(1)},
                           Complex{j.at("beta").at(0), j.at("beta").at(1)}});
}

inline json to_json(const Se2Element& g) {
  return json{{"theta", g.theta}, {"t", {g.tx, g.ty}}};
}
inline Se2Element se2_from_json(const json& j) {
  return make_se2(j.at("theta").get<double>(), j.at("t").at(0), j.at("t").at(1));
}

inline json to_json(const AffineGrid& g) { return json{{"a", g.aValues}, {"b", g.bValues}}; }

inline json to_json(const ReprSpec& r) {
  switch (r.kind) {
    case ReprSpec::Kind::AffineP:
      return json{{"type", "affine"}, {"p", std::isinf(r.p) ? json("inf") : json(r.p)}};
    case ReprSpec::Kind::Sl2Line: return json{{"type", "sl2_line"}};
    case ReprSpec::Kind::Sl2HalfPlane: return json{{"type", "sl2_halfplane"}};
    default: return json{{"type", "unitary_matrix"}};
  }
}

inline ReprSpec repr_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "affine") {
    double p;
    const auto& pj = j.at("p");
    if (pj.is_string()) {
      require(pj.get<std::string>() == "inf", "repr: p must be a number >= 1 or \"inf\"");
      p = kInf;
    } else {
      p = pj.get<double>();
    }
    require(p >= 1.0, "repr: p must be >= 1 (field rho.p)");
    return affine_repr(p);
  }
  if (type == "sl2_line") return {ReprSpec::Kind::Sl2Line, 2.0};
  if (type == "sl2_halfplane") return {ReprSpec::Kind::Sl2HalfPlane, 2.0};
  if (type == "unitary_matrix") return {ReprSpec::Kind::UnitaryMatrix, 2.0};
  throw PreconditionError("repr: unknown type \"" + type + "\"");
}

inline json to_json(const FiducialSpec& f) {
  switch (f.kind) {
    case FiducialSpec::Kind::CauchyPlus: return json{{"type", "cauchy+"}};
    case FiducialSpec::Kind::CauchyMinus: return json{{"type", "cauchy-"}};
    case FiducialSpec::Kind::Poisson: return json{{"type", "poisson"}};
    case FiducialSpec::Kind::Jump: return json{{"type", "jump"}};
    case FiducialSpec::Kind::PairWith: return json{{"type", "pair_with"}};
    case FiducialSpec::Kind::Maximal: return json{{"type", "maximal"}};
    case FiducialSpec::Kind::LittlewoodPaley: return json{{"type", "littlewood_paley"}};
    default: return json{{"type", "radon_line"}};
  }
}

inline json to_json(const PairingSpec& s) {
  if (s.kind == PairingSpec::Kind::Haar) return json{{"type", "haar"}};
  return json{{"type", "hardy"}, {"a_sequence", s.aSequence}};
}

inline PairingSpec pairing_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "haar") return PairingSpec::haar();
  if (type == "hardy") {
    auto seq = j.at("a_sequence").get<std::vector<double>>();
    return PairingSpec::hardy(std::move(seq));
  }
  throw PreconditionError("pairing: unknown type \"" + type + "\"");
}

inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix: expected a nested array");
  ComplexMatrix m(j.size());
  require(m.dim() <= 16, "matrix: dimension must be <= 16");
  for (std::size_t i = 0; i < m.dim(); ++i) {
    require(j.at(i).size() == m.dim(), "matrix: rows must be square");
    for (std::size_t k = 0; k < m.dim(); ++k) {
      const auto& e = j.at(i).at(k);
      m(i, k) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Stable text formatting and atomic writes
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Write-then-rename so partially written artifacts are never observed.
inline void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "atomic_write_text: cannot open " + tmp.string());
    out << content;
    require(out.good(), "atomic_write_text: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// CSV forms (with a JSON geometry header written alongside)
// ---------------------------------------------------------------------------

inline std::string signal_to_csv(const SignalGrid& f) {
  std::ostringstream os;
  os << "x,re,im\n";
  for (std::size_t k = 0; k < f.values.size(); ++k)
    os << format_double(f.x(k)) << ',' << format_double(f.values[k].real()) << ','
       << format_double(f.values[k].imag()) << '\n';
  return os.str();
}

inline SignalGrid signal_from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> xs;
  std::vector<Complex> vs;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) { first = false; continue; }  // header
    std::istringstream ls(line);
    std::string cell;
    double col[3] = {0.0, 0.0, 0.0};
    for (int c = 0; c < 3 && std::getline(ls, cell, ','); ++c) col[c] = std::stod(cell);
    xs.push_back(col[0]);
    vs.emplace_back(col[1], col[2]);
  }
  require(xs.size() >= 2, "signal_from_csv: need at least two rows");
  SignalGrid f;
  f.x0 = xs.front();
  f.dx = xs[1] - xs[0];
  require(f.dx > 0.0, "signal_from_csv: x must increase");
  for (std::size_t k = 2; k < xs.size(); ++k)
    require(std::abs((xs[k] - xs[k - 1]) - f.dx) <= 1e-9 * f.dx,
            "signal_from_csv: grid must be uniform");
  f.values = std::move(vs);
  return f;
}

inline SignalGrid signal_from_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "signal_from_csv: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return signal_from_csv_text(buf.str());
}

inline std::string field_to_csv(const TransformField& W) {
  std::ostringstream os;
  os << (W.uDim == 2 ? "a,b,re,im,re2,im2\n" : "a,b,re,im\n");
  for (std::size_t ia = 0; ia < W.grid.na(); ++ia)
    for (std::size_t ib = 0; ib < W.grid.nb(); ++ib) {
      const Complex v = W.at(ia, ib);
      os << format_double(W.grid.aValues[ia]) << ',' << format_double(W.grid.bValues[ib])
         << ',' << format_double(v.real()) << ',' << format_double(v.imag());
      if (W.uDim == 2) {
        const Complex w = W.at2(ia, ib);
        os << ',' << format_double(w.real()) << ',' << format_double(w.imag());
      }
      os << '\n';
    }
  return os.str();
}

inline std::string sinogram_to_csv(const Sinogram& s) {
  std::ostringstream os;
  os << "theta,s,value\n";
  for (std::size_t it = 0; it < s.thetaGrid.size(); ++it)
    for (std::size_t is = 0; is < s.sGrid.size(); ++is)
      os << format_double(s.thetaGrid[it]) << ',' << format_double(s.sGrid[is]) << ','
         << format_double(s.at(it, is).real()) << '\n';
  return os.str();
}

inline std::string plane_to_csv(const PlaneField& f) {
  std::ostringstream os;
  os << "x,y,re,im\n";
  for (std::size_t iy = 0; iy < f.ny; ++iy)
    for (std::size_t ix = 0; ix < f.nx; ++ix)
      os << format_double(f.x(ix)) << ',' << format_double(f.y(iy)) << ','
         << format_double(f.at(ix, iy).real()) << ',' << format_double(f.at(ix, iy).imag())
         << '\n';
  return os.str();
}

inline json geometry_header(const SignalGrid& f) {
  return json{{"type", "signal"}, {"x0", f.x0}, {"dx", f.dx}, {"n", f.values.size()}};
}

inline json geometry_header(const TransformField& W) {
  return json{{"type", "transform_field"},
              {"a_min", W.grid.aValues.front()},
              {"a_max", W.grid.aValues.back()},
              {"n_a", W.grid.na()},
              {"b_min", W.grid.bValues.front()},
              {"b_max", W.grid.bValues.back()},
              {"n_b", W.grid.nb()},
              {"p", std::isinf(W.p) ? json("inf") : json(W.p)},
              {"u_dim", W.uDim}};
}

}  // namespace covtrans
