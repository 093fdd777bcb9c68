#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "sols/algebra.hpp"
#include "sols/config.hpp"

namespace sols {

struct ParsedAlgebra {
  Bracket mu;
  std::optional<Splitting> split;
  bool hadGram = false;

  ParsedAlgebra() : mu(0) {}
};

namespace detail {

inline int asIndex(const nlohmann::json& j, int n, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const long long v = j.get<long long>();
  if (v < 1 || v > n) throw ParseError(std::string(what) + " out of range [1, dim]");
  return static_cast<int>(v);
}

}  // namespace detail

/// Reads an algebra from JSON.  Fields:
///   dim       : vector space dimension
///   brackets  : list of [i, j, k, value], 1-based, meaning <[e_i,e_j], e_k>
///   a_indices : optional 1-based list marking a claimed reductive complement
///   gram      : optional symmetric positive definite inner product matrix
/// Structure constants are re-expressed in an orthonormal frame when a gram
/// matrix is present; a claimed splitting is certified before it is returned.
inline ParsedAlgebra parseAlgebra(const nlohmann::json& j, const Config& cfg = {}) {
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("missing integer field 'dim'");
  const long long dimRaw = j["dim"].get<long long>();
  if (dimRaw < 1 || dimRaw > 64) throw ParseError("'dim' must be in [1, 64]");
  const int n = static_cast<int>(dimRaw);

  ParsedAlgebra out;
  out.mu = Bracket(n);

  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("'brackets' must be an array");
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& entry : j["brackets"]) {
      if (!entry.is_array() || entry.size() != 4)
        throw ParseError("each bracket entry must be [i, j, k, value]");
      const int i = detail::asIndex(entry[0], n, "bracket index i");
      const int jj = detail::asIndex(entry[1], n, "bracket index j");
      const int k = detail::asIndex(entry[2], n, "bracket index k");
      if (i == jj) throw ParseError("bracket entry with i == j");
      if (!entry[3].is_number()) throw ParseError("bracket value must be a number");
      double v = entry[3].get<double>();
      if (!std::isfinite(v)) throw ParseError("bracket value must be finite");
      int a = i, b = jj;
      if (a > b) {
        std::swap(a, b);
        v = -v;
      }
      if (!seen.insert({a, b, k}).second) {
        std::ostringstream os;
        os << "duplicate bracket entry for (" << a << ", " << b << ", " << k << ")";
        throw ParseError(os.str());
      }
      out.mu.set(a - 1, b - 1, k - 1, v);
    }
  }

  std::vector<int> aIdx;
  if (j.contains("a_indices")) {
    if (!j["a_indices"].is_array()) throw ParseError("'a_indices' must be an array");
    std::set<int> dedup;
    for (const auto& e : j["a_indices"]) {
      const int v = detail::asIndex(e, n, "a_indices entry");
      if (!dedup.insert(v).second) throw ParseError("repeated entry in 'a_indices'");
      aIdx.push_back(v - 1);
    }
  }

  if (j.contains("gram")) {
    const auto& jg = j["gram"];
    if (!jg.is_array() || static_cast<int>(jg.size()) != n)
      throw ParseError("'gram' must be a dim x dim matrix");
    Mat g(n, n);
    for (int r = 0; r < n; ++r) {
      if (!jg[r].is_array() || static_cast<int>(jg[r].size()) != n)
        throw ParseError("'gram' must be a dim x dim matrix");
      for (int c = 0; c < n; ++c) {
        if (!jg[r][c].is_number()) throw ParseError("'gram' entries must be numbers");
        g(r, c) = jg[r][c].get<double>();
        if (!std::isfinite(g(r, c))) throw ParseError("'gram' entries must be finite");
      }
    }
    if ((g - g.transpose()).norm() > 1e-12 * std::max(1.0, g.norm()))
      throw ParseError("'gram' must be symmetric");
    out.hadGram = true;

    // A coordinate split only survives the frame change if the claimed
    // ideal occupies the leading coordinates: lower triangular Cholesky
    // factors preserve leading spans.  Permute first when both are given.
    std::vector<int> order(n);
    if (!aIdx.empty() || j.contains("a_indices")) {
      std::set<int> inA(aIdx.begin(), aIdx.end());
      int pos = 0;
      for (int i = 0; i < n; ++i)
        if (!inA.count(i)) order[pos++] = i;
      const int m = pos;
      for (int i = 0; i < n; ++i)
        if (inA.count(i)) order[pos++] = i;
      Mat perm = Mat::Zero(n, n);
      for (int c = 0; c < n; ++c) perm(order[c], c) = 1.0;
      out.mu = act(perm.transpose(), out.mu);
      g = perm.transpose() * g * perm;
      Splitting sp;
      for (int i = 0; i < m; ++i) sp.nIdx.push_back(i);
      for (int i = m; i < n; ++i) sp.aIdx.push_back(i);
      out.split = sp;
    } else {
      for (int i = 0; i < n; ++i) order[i] = i;
    }

    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
      throw InvalidGram("gram matrix is not positive definite");
    const Mat l = llt.matrixL();
    out.mu = act(l.transpose(), out.mu);
  } else if (j.contains("a_indices")) {
    Splitting sp;
    std::set<int> inA(aIdx.begin(), aIdx.end());
    sp.aIdx.assign(inA.begin(), inA.end());
    for (int i = 0; i < n; ++i)
      if (!inA.count(i)) sp.nIdx.push_back(i);
    out.split = sp;
  }

  if (out.split) {
    try {
      checkSplitting(out.mu, *out.split, cfg.tolResidual);
    } catch (const BadSplitting& e) {
      throw SplittingMismatch(std::string("claimed splitting failed certification: ") +
                              e.what());
    }
  }
  return out;
}

inline ParsedAlgebra loadAlgebraFile(const std::string& path, const Config& cfg = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return parseAlgebra(j, cfg);
}

inline nlohmann::json serializeAlgebra(const Bracket& mu,
                                       const std::optional<Splitting>& split = {}) {
  nlohmann::json j;
  const int n = mu.dim();
  j["dim"] = n;
  nlohmann::json br = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        if (mu.coeff(i, jj, k) != 0.0)
          br.push_back({i + 1, jj + 1, k + 1, mu.coeff(i, jj, k)});
  j["brackets"] = br;
  if (split) {
    nlohmann::json a = nlohmann::json::array();
    for (int i : split->aIdx) a.push_back(i + 1);
    j["a_indices"] = a;
  }
  return j;
}

}  // namespace sols
