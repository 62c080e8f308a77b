// Copyright 2026 The fsad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Self-consistency checks run by `fsad check`.

#ifndef FSAD_CHECK_HPP_
#define FSAD_CHECK_HPP_

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/compare.hpp"
#include "fsad/oracle.hpp"
#include "fsad/tape.hpp"
#include "fsad/weight.hpp"

namespace fsad {

enum class CheckStatus { kPass, kFail, kSkipped };

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool passed() const {
    for (const auto& it : items) {
      if (it.status == CheckStatus::kFail) return false;
    }
    return true;
  }
};

struct CheckOptions {
  std::size_t max_paths = 10000;
  double fixed_point_tol = 1e-10;
  double brute_tol = 1e-9;
  double fd_tol = 1e-5;
  double tape_tol = 1e-10;
  double subgradient_tol = 1e-12;
};

std::string format_report(const CheckReport& report);

namespace internal {

// d_i == alpha_i (+) ((+)_{j<i} d_j (x) T_ji), with the right-hand side
// accumulated column by column from scratch.
template <DifferentiableSemiring S>
CheckItem check_fixed_point(const MatrixForm<S>& m, const SemiringVector<S>& d,
                            double tol) {
  const S& s = m.alpha.semiring();
  const auto& t = m.transitions;
  std::vector<typename S::Value> rhs(m.alpha.begin(), m.alpha.end());
  for (std::size_t j = 0; j < t.dimension(); ++j) {
    for (std::size_t k = t.row_begin(j); k < t.row_end(j); ++k) {
      rhs[t.col(k)] = s.plus(rhs[t.col(k)], s.times(d[j], t.value(k)));
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!values_close<S>(d[i], rhs[i], tol)) {
      return {"fixed-point", CheckStatus::kFail,
              "d[" + std::to_string(i) + "] = " + s.format(d[i]) +
                  " but alpha + dT gives " + s.format(rhs[i])};
    }
  }
  return {"fixed-point", CheckStatus::kPass,
          std::to_string(d.size()) + " states"};
}

}  // namespace internal

// `a` must be topologically sorted.
template <DifferentiableSemiring S>
CheckReport run_checks(const Automaton<S>& a, const CheckOptions& opt = {}) {
  const S& s = a.semiring();
  CheckReport report;
  const MatrixForm<S> m = build_matrix(a);
  const WeightResult<S> w = weight(m);

  report.items.push_back(
      internal::check_fixed_point(m, w.distances, opt.fixed_point_tol));

  bool enumerable = true;
  try {
    const auto brute = brute_weight(a, opt.max_paths);
    if (values_close<S>(w.nu, brute, opt.brute_tol)) {
      report.items.push_back(
          {"brute-weight", CheckStatus::kPass, "nu = " + s.format(w.nu)});
    } else {
      report.items.push_back({"brute-weight", CheckStatus::kFail,
                              "dp " + s.format(w.nu) + " vs paths " +
                                  s.format(brute)});
    }
  } catch (const PathExplosionError& e) {
    enumerable = false;
    report.items.push_back({"brute-weight", CheckStatus::kSkipped, e.what()});
  }

  const auto params = finite_parameters(a);
  if constexpr (is_counted_semiring_v<S>) {
    if (!enumerable) {
      report.items.push_back({"subgradient", CheckStatus::kSkipped,
                              "too many paths to enumerate"});
    } else {
      const auto g = weight_vjp(a, m, w.distances, w.nu, s.unit_cotangent());
      CheckItem item{"subgradient", CheckStatus::kPass,
                     std::to_string(params.size()) + " coordinates"};
      for (const auto& p : params) {
        const double ref = subgradient_reference(a, p, opt.max_paths);
        const double got = gradient_coord(g, p);
        if (!approx_equal(ref, got, opt.subgradient_tol)) {
          std::ostringstream os;
          os << "parameter kind " << static_cast<int>(p.kind) << " index "
             << p.index << ": vjp " << got << " vs reference " << ref;
          item = {"subgradient", CheckStatus::kFail, os.str()};
          break;
        }
      }
      report.items.push_back(item);
    }
  } else {
    CheckItem item{"finite-difference", CheckStatus::kPass, ""};
    std::size_t checked = 0;
    for (int k = 0; k < S::kTangentDim && item.status == CheckStatus::kPass;
         ++k) {
      const auto seed = basis_cotangent(s, k);
      const auto g = weight_vjp(a, m, w.distances, w.nu, seed);
      for (const auto& p : params) {
        const double fd = fd_gradient(a, p, seed);
        const double got = gradient_coord(g, p);
        ++checked;
        if (!approx_equal(fd, got, opt.fd_tol)) {
          std::ostringstream os;
          os.precision(17);
          os << "seed " << k << ", parameter kind " << static_cast<int>(p.kind)
             << " index " << p.index << " coord " << p.coord << ": vjp "
             << got << " vs fd " << fd;
          item = {"finite-difference", CheckStatus::kFail, os.str()};
          break;
        }
      }
    }
    if (item.status == CheckStatus::kPass) {
      item.detail = std::to_string(checked) + " coordinates";
    }
    report.items.push_back(item);
  }

  {
    const auto seed = s.unit_cotangent();
    const auto flat = weight_vjp(a, m, w.distances, w.nu, seed);
    const auto rec = record_weight(a);
    const auto naive = unpack_weight_gradients(rec, backward(rec.tape, seed));
    CheckItem item{"tape", CheckStatus::kPass,
                   std::to_string(rec.tape.num_nodes()) + " tape nodes"};
    auto cmp = [&](const CotangentVector<S>& x, const CotangentVector<S>& y,
                   const char* what) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!cotangents_close<S>(x[i], y[i], opt.tape_tol)) {
          item = {"tape", CheckStatus::kFail,
                  std::string(what) + "[" + std::to_string(i) +
                      "]: flat " + s.format_cotangent(x[i]) + " vs tape " +
                      s.format_cotangent(y[i])};
          return false;
        }
      }
      return true;
    };
    if (!values_close<S>(rec.nu, w.nu, 0.0)) {
      item = {"tape", CheckStatus::kFail, "recorded primal differs"};
    } else {
      cmp(flat.initial, naive.initial, "initial") &&
          cmp(flat.final, naive.final, "final") &&
          cmp(flat.arcs, naive.arcs, "arc");
    }
    report.items.push_back(item);
  }
  return report;
}

}  // namespace fsad

#endif  // FSAD_CHECK_HPP_
