#include "couplecheck/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace couplecheck {

namespace {

const Value kPlus{"+1"};
const Value kMinus{"-1"};

[[noreturn]] void structural(const std::string& why) { throw Error(ErrorCode::StructuralMismatch, why); }

std::string_view yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

// ---------------------------------------------------------------------------
// CyclicFourSystem

CyclicFourSystem CyclicFourSystem::from_system(System system) {
  if (system.shared_connections().empty()) structural("system has no shared contents across contexts");
  const auto& bunches = system.bunches();
  if (bunches.size() != 4) {
    structural("a 2x2 design needs 4 contexts, this system has " + std::to_string(bunches.size()));
  }
  if (system.contents().size() != 4) {
    structural("a 2x2 design needs 4 contents, this system has " + std::to_string(system.contents().size()));
  }
  for (const auto& b : bunches) {
    if (b.arity() != 2) {
      structural("context '" + b.context().id + "' measures " + std::to_string(b.arity()) +
                 " contents; every context must measure exactly 2");
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const std::set<Value> values(b.supports()[k].begin(), b.supports()[k].end());
      if (values != std::set<Value>{kPlus, kMinus}) {
        structural("support of '" + b.context().measured[k].id + "' in context '" + b.context().id +
                   "' must be exactly {+1, -1}");
      }
    }
  }
  for (const auto& conn : system.connections()) {
    if (conn.observables.size() != 2) {
      structural("content '" + conn.content.id + "' is measured in " + std::to_string(conn.observables.size()) +
                 " contexts; every content must appear in exactly 2");
    }
  }

  // Two-color the content graph (contexts are edges) from the smallest content.
  std::map<Content, int> side;
  std::vector<Content> frontier{system.contents().front()};
  side[frontier.front()] = 0;
  while (!frontier.empty()) {
    const auto c = frontier.back();
    frontier.pop_back();
    for (const auto& b : bunches) {
      const auto pos = b.context().position_of(c);
      if (!pos) continue;
      const auto& other = b.context().measured[1 - *pos];
      const auto it = side.find(other);
      if (it == side.end()) {
        side[other] = 1 - side[c];
        frontier.push_back(other);
      } else if (it->second == side[c]) {
        structural("contexts do not split the contents into an A side and a B side");
      }
    }
  }
  if (side.size() != 4) structural("contexts do not form a single cycle through all four contents");

  CyclicFourSystem out(std::move(system));
  std::vector<Content> a_side;
  std::vector<Content> b_side;
  for (const auto& [c, s] : side) (s == 0 ? a_side : b_side).push_back(c);
  std::copy(a_side.begin(), a_side.end(), out.a_.begin());
  std::copy(b_side.begin(), b_side.end(), out.b_.begin());

  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const Bunch* match = nullptr;
      for (const auto& b : out.system_.bunches()) {
        if (b.context().position_of(out.a(i)) && b.context().position_of(out.b(j))) match = &b;
      }
      if (match == nullptr) structural("no context measures both '" + out.a(i).id + "' and '" + out.b(j).id + "'");
      out.context_[i - 1][j - 1] = match->context().id;
      const bool a_first = *match->context().position_of(out.a(i)) == 0;
      auto at = [&](const Value& av, const Value& bv) {
        const std::array<Value, 2> tuple = a_first ? std::array{av, bv} : std::array{bv, av};
        return match->mass(tuple);
      };
      out.table_[i - 1][j - 1] = {at(kPlus, kPlus), at(kPlus, kMinus), at(kMinus, kPlus), at(kMinus, kMinus)};
    }
  }
  return out;
}

Rational CyclicFourSystem::correlation(int i, int j) const {
  const auto& t = table(i, j);
  return t.pp + t.mm - t.pm - t.mp;
}

Distribution CyclicFourSystem::a_marginal(int i, int j) const {
  return system_.marginal({a(i), context(i, j)});
}

Distribution CyclicFourSystem::b_marginal(int i, int j) const {
  return system_.marginal({b(j), context(i, j)});
}

CyclicFourSystem cyclic_four_from_tables(const std::array<BinaryTable, 4>& tables) {
  const std::vector<Value> pm{kPlus, kMinus};
  std::vector<Bunch> bunches;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const auto& t = tables[static_cast<std::size_t>((i - 1) * 2 + (j - 1))];
      const auto id = std::to_string(i) + std::to_string(j);
      bunches.emplace_back(Context{id, {Content{"A" + std::to_string(i)}, Content{"B" + std::to_string(j)}}},
                           std::vector{pm, pm}, std::vector{t.pp, t.pm, t.mp, t.mm});
    }
  }
  return CyclicFourSystem::from_system(make_system(std::move(bunches)));
}

// ---------------------------------------------------------------------------
// Closed-form criteria

Rational expectation(const Distribution& d) {
  const std::set<Value> values(d.support().begin(), d.support().end());
  if (values != std::set<Value>{kPlus, kMinus}) {
    throw Error(ErrorCode::NonBinarySupport, "expectation needs the support {+1, -1}");
  }
  return d.mass(kPlus) - d.mass(kMinus);
}

MarginalSelectivity marginal_selectivity_check(const CyclicFourSystem& s) {
  MarginalSelectivity out;
  out.holds = true;
  auto add = [&](const Content& c, const std::string& c1, const std::string& c2, const Distribution& d1,
                 const Distribution& d2) {
    ConnectionDetail detail{c, c1, c2, d1.mass(kPlus), d2.mass(kPlus), same_law(d1, d2)};
    out.holds = out.holds && detail.consistent;
    out.connections.push_back(std::move(detail));
  };
  for (int i = 1; i <= 2; ++i) {
    add(s.a(i), s.context(i, 1), s.context(i, 2), s.a_marginal(i, 1), s.a_marginal(i, 2));
  }
  for (int j = 1; j <= 2; ++j) {
    add(s.b(j), s.context(1, j), s.context(2, j), s.b_marginal(1, j), s.b_marginal(2, j));
  }
  return out;
}

Rational chsh_value(const CyclicFourSystem& s) {
  Rational sum;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) sum += s.correlation(i, j);
  }
  Rational best;
  for (int k = 1; k <= 2; ++k) {
    for (int l = 1; l <= 2; ++l) best = max(best, abs(sum - Rational(2) * s.correlation(k, l)));
  }
  return best;
}

Rational extended_bound(const CyclicFourSystem& s) {
  Rational bound(2);
  for (int i = 1; i <= 2; ++i) bound += abs(expectation(s.a_marginal(i, 1)) - expectation(s.a_marginal(i, 2)));
  for (int j = 1; j <= 2; ++j) bound += abs(expectation(s.b_marginal(1, j)) - expectation(s.b_marginal(2, j)));
  return bound;
}

ExtendedCheck extended_noncontextuality_check(const CyclicFourSystem& s) {
  ExtendedCheck out;
  out.lhs = chsh_value(s);
  out.bound = extended_bound(s);
  out.noncontextual = out.lhs <= out.bound;
  return out;
}

bool selective_influences_check(const CyclicFourSystem& s) {
  return marginal_selectivity_check(s).holds && chsh_value(s) <= Rational(2);
}

// ---------------------------------------------------------------------------
// LP routes

bool is_noncontextual_lp(const CyclicFourSystem& s) { return maximally_connected_coupling(s.system()).has_value(); }

bool selective_influences_lp(const CyclicFourSystem& s) {
  std::vector<ConnectionTarget> targets;
  for (const auto& c : s.system().contents()) targets.push_back({c, Rational(1)});
  return couple_with_equality_targets(s.system(), targets).has_value();
}

bool brute_force_oracle(const CyclicFourSystem& s) {
  if (!marginal_selectivity_check(s).holds) {
    throw Error(ErrorCode::RequiresMarginalSelectivity, "the deterministic-mixture test assumes marginal selectivity");
  }
  // Strategy bits: A1, A2, B1, B2; bit set means -1.
  auto value = [](unsigned strategy, unsigned bit) { return (strategy >> bit) & 1U; };
  LinearSystem lp;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const auto& t = s.table(i, j);
      const std::array<Rational, 4> masses{t.pp, t.pm, t.mp, t.mm};
      for (unsigned cell = 0; cell < 4; ++cell) {
        std::vector<Rational> row(16);
        for (unsigned strategy = 0; strategy < 16; ++strategy) {
          const bool a_match = value(strategy, static_cast<unsigned>(i - 1)) == (cell >> 1);
          const bool b_match = value(strategy, static_cast<unsigned>(2 + j - 1)) == (cell & 1U);
          if (a_match && b_match) row[strategy] = Rational(1);
        }
        lp.constraint_matrix.push_back(std::move(row));
        lp.rhs.push_back(masses[cell]);
      }
    }
  }
  return solve_feasibility(lp).feasible();
}

AnalysisReport analyze(const CyclicFourSystem& s) {
  AnalysisReport r;
  r.marginal_selectivity = marginal_selectivity_check(s);
  const auto extended = extended_noncontextuality_check(s);
  r.chsh_value = extended.lhs;
  r.chsh_satisfied = r.chsh_value <= Rational(2);
  r.extended_bound = extended.bound;
  r.noncontextual_closed_form = extended.noncontextual;
  r.maximal_coupling = maximally_connected_coupling(s.system());
  r.noncontextual_lp = r.maximal_coupling.has_value();
  r.selective_influences = r.marginal_selectivity.holds && r.chsh_satisfied;
  r.selective_influences_lp = selective_influences_lp(s);
  r.oracle_agreement =
      r.noncontextual_closed_form == r.noncontextual_lp && r.selective_influences == r.selective_influences_lp;
  if (r.marginal_selectivity.holds) {
    r.brute_force = brute_force_oracle(s);
    r.oracle_agreement = r.oracle_agreement && *r.brute_force == r.selective_influences &&
                         *r.brute_force == r.noncontextual_lp;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_machine(const AnalysisReport& r) {
  std::ostringstream os;
  os << "marginal_selectivity=" << yes_no(r.marginal_selectivity.holds) << '\n';
  for (const auto& c : r.marginal_selectivity.connections) {
    const auto key = "connection." + c.content.id;
    os << key << ".contexts=" << c.first_context << ',' << c.second_context << '\n';
    os << key << ".p_plus=" << c.first_p_plus << ',' << c.second_p_plus << '\n';
    os << key << ".consistent=" << yes_no(c.consistent) << '\n';
  }
  os << "chsh_value=" << r.chsh_value << '\n';
  os << "chsh_satisfied=" << yes_no(r.chsh_satisfied) << '\n';
  os << "extended_bound=" << r.extended_bound << '\n';
  os << "noncontextual_closed_form=" << yes_no(r.noncontextual_closed_form) << '\n';
  os << "noncontextual_lp=" << yes_no(r.noncontextual_lp) << '\n';
  os << "selective_influences=" << yes_no(r.selective_influences) << '\n';
  os << "selective_influences_lp=" << yes_no(r.selective_influences_lp) << '\n';
  os << "brute_force_oracle=" << (r.brute_force ? yes_no(*r.brute_force) : "not_applicable") << '\n';
  os << "oracle_agreement=" << yes_no(r.oracle_agreement) << '\n';
  os << "noncontextual=" << yes_no(r.noncontextual()) << '\n';
  return os.str();
}

std::string format_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "Marginal selectivity: " << (r.marginal_selectivity.holds ? "holds" : "violated") << '\n';
  for (const auto& c : r.marginal_selectivity.connections) {
    os << "  " << c.content.id << ": P(+1) = " << c.first_p_plus << " in " << c.first_context << ", "
       << c.second_p_plus << " in " << c.second_context << (c.consistent ? "" : "  (differs)") << '\n';
  }
  os << "CHSH value:      " << r.chsh_value << (r.chsh_satisfied ? "  (<= 2)" : "  (> 2)") << '\n';
  os << "Extended bound:  " << r.extended_bound << '\n';
  os << "Closed form:     " << (r.noncontextual_closed_form ? "noncontextual" : "contextual") << '\n';
  os << "Coupling LP:     "
     << (r.noncontextual_lp ? "maximally connected coupling found" : "no maximally connected coupling") << '\n';
  os << "Selective influences: " << (r.selective_influences ? "yes" : "no") << '\n';
  if (r.brute_force) os << "Deterministic mixture: " << (*r.brute_force ? "yes" : "no") << '\n';
  os << "Routes agree:    " << (r.oracle_agreement ? "yes" : "NO") << '\n';
  os << "Verdict: " << (r.noncontextual() ? "noncontextual" : "contextual") << '\n';
  return os.str();
}

}  // namespace couplecheck
