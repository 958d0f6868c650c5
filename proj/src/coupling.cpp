#include "couplecheck/coupling.hpp"

#include <algorithm>
#include <set>

namespace couplecheck {

namespace {

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

// Observable supports in coupling-coordinate order.
std::vector<const std::vector<Value>*> coordinate_supports(const System& system) {
  std::vector<const std::vector<Value>*> out;
  for (const auto& b : system.bunches()) {
    for (const auto& s : b.supports()) out.push_back(&s);
  }
  return out;
}

std::vector<std::size_t> decode_atom(std::size_t flat, const std::vector<const std::vector<Value>*>& supports) {
  std::vector<std::size_t> idx(supports.size());
  for (std::size_t k = supports.size(); k-- > 0;) {
    idx[k] = flat % supports[k]->size();
    flat /= supports[k]->size();
  }
  return idx;
}

// Coordinates (into the full tuple) of the observables of `content`.
std::vector<std::size_t> connection_coordinates(const std::vector<Observable>& observables, const Content& content) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    if (observables[k].content == content) out.push_back(k);
  }
  return out;
}

bool all_equal(const std::vector<std::size_t>& atom, const std::vector<std::size_t>& coords,
               const std::vector<const std::vector<Value>*>& supports) {
  for (std::size_t t = 1; t < coords.size(); ++t) {
    const auto a = coords.front();
    const auto b = coords[t];
    if ((*supports[a])[atom[a]] != (*supports[b])[atom[b]]) return false;
  }
  return true;
}

Coupling empty_coupling(const System& system) { return Coupling{system, system.observables(), {}}; }

}  // namespace

std::vector<Value> Coupling::labels(const std::vector<std::size_t>& atom) const {
  std::vector<Value> out;
  out.reserve(atom.size());
  for (std::size_t k = 0; k < atom.size(); ++k) out.push_back(system.support(observables[k])[atom[k]]);
  return out;
}

Rational Coupling::mass(std::span<const Value> tuple) const {
  if (tuple.size() != observables.size()) return Rational(0);
  std::vector<std::size_t> idx(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const auto& s = system.support(observables[k]);
    const auto it = std::find(s.begin(), s.end(), tuple[k]);
    if (it == s.end()) return Rational(0);
    idx[k] = static_cast<std::size_t>(it - s.begin());
  }
  const auto it = atoms.find(idx);
  return it == atoms.end() ? Rational(0) : it->second;
}

Rational Coupling::total_mass() const {
  Rational sum;
  for (const auto& [atom, m] : atoms) sum += m;
  return sum;
}

Rational equality_probability(const Coupling& coupling, const Content& content) {
  const auto coords = connection_coordinates(coupling.observables, content);
  if (coords.empty()) throw Error(ErrorCode::UnknownConnection, "no connection for content " + quote(content.id));
  const auto supports = coordinate_supports(coupling.system);
  Rational p;
  for (const auto& [atom, m] : coupling.atoms) {
    if (all_equal(atom, coords, supports)) p += m;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Constructors

Coupling independent_coupling(const System& system) {
  auto coupling = empty_coupling(system);
  std::map<std::vector<std::size_t>, Rational> partial{{{}, Rational(1)}};
  for (const auto& b : system.bunches()) {
    std::map<std::vector<std::size_t>, Rational> next;
    for (const auto& [prefix, m] : partial) {
      for (std::size_t flat = 0; flat < b.atom_count(); ++flat) {
        if (b.joint()[flat].is_zero()) continue;
        auto atom = prefix;
        const auto idx = b.decode(flat);
        atom.insert(atom.end(), idx.begin(), idx.end());
        next.emplace(std::move(atom), m * b.joint()[flat]);
      }
    }
    partial = std::move(next);
  }
  coupling.atoms = std::move(partial);
  return coupling;
}

Coupling identity_coupling(const System& system) {
  std::vector<Distribution> marginals;
  for (const auto& obs : system.observables()) {
    if (system.bunch(obs.context).arity() != 1) {
      throw Error(ErrorCode::StructuralMismatch,
                  "identity coupling needs single-observable contexts; context " + quote(obs.context) +
                      " measures " + std::to_string(system.bunch(obs.context).arity()));
    }
    marginals.push_back(system.marginal(obs));
  }
  for (std::size_t k = 1; k < marginals.size(); ++k) {
    if (!same_law(marginals.front(), marginals[k])) {
      const auto obs = system.observables();
      throw Error(ErrorCode::DistributionsDiffer, obs.front().name() + " and " + obs[k].name() +
                                                      " have different distributions; no identity coupling exists");
    }
  }
  auto coupling = empty_coupling(system);
  const auto& first = marginals.front();
  for (std::size_t i = 0; i < first.support().size(); ++i) {
    if (first.masses()[i].is_zero()) continue;
    std::vector<std::size_t> atom;
    for (const auto& d : marginals) atom.push_back(*d.index_of(first.support()[i]));
    coupling.atoms.emplace(std::move(atom), first.masses()[i]);
  }
  return coupling;
}

Coupling identity_coupling(std::span<const Distribution> connection_dists) {
  if (connection_dists.empty()) throw Error(ErrorCode::DimensionMismatch, "identity coupling of nothing");
  for (std::size_t k = 1; k < connection_dists.size(); ++k) {
    if (!same_law(connection_dists.front(), connection_dists[k])) {
      throw Error(ErrorCode::DistributionsDiffer, "distribution " + std::to_string(k + 1) +
                                                      " differs from the first; no identity coupling exists");
    }
  }
  const auto width = std::to_string(connection_dists.size()).size();
  std::vector<Bunch> bunches;
  for (std::size_t k = 0; k < connection_dists.size(); ++k) {
    auto id = std::to_string(k + 1);
    id = "c" + std::string(width - id.size(), '0') + id;
    const auto& d = connection_dists[k];
    bunches.emplace_back(Context{id, {Content{"q"}}}, std::vector<std::vector<Value>>{d.support()}, d.masses());
  }
  return identity_coupling(make_system(std::move(bunches)));
}

Coupling deterministic_coupling(const Distribution& d, const std::function<Value(const Value&)>& map) {
  std::vector<Value> image;
  std::set<Value> seen;
  for (const auto& v : d.support()) {
    auto w = map(v);
    if (!seen.insert(w).second) {
      throw Error(ErrorCode::NotABijection, "map sends two values to " + quote(w.label));
    }
    image.push_back(std::move(w));
  }
  auto system = make_system({Bunch(Context{"X", {Content{"X"}}}, {d.support()}, d.masses()),
                             Bunch(Context{"Y", {Content{"Y"}}}, {image}, d.masses())});
  auto coupling = empty_coupling(system);
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    if (!d.masses()[i].is_zero()) coupling.atoms.emplace(std::vector{i, i}, d.masses()[i]);
  }
  return coupling;
}

Rational max_equality_probability(const Distribution& d1, const Distribution& d2) {
  Rational p;
  for (const auto& v : d1.support()) p += min(d1.mass(v), d2.mass(v));
  return p;
}

// ---------------------------------------------------------------------------
// LP-backed couplings

LinearSystem coupling_linear_system(const System& system, std::span<const ConnectionTarget> targets) {
  const auto observables = system.observables();
  const auto supports = coordinate_supports(system);
  std::size_t atoms = 1;
  for (const auto* s : supports) atoms *= s->size();

  std::vector<std::vector<std::size_t>> target_coords;
  for (const auto& t : targets) {
    auto coords = connection_coordinates(observables, t.content);
    if (coords.empty()) throw Error(ErrorCode::UnknownConnection, "no connection for content " + quote(t.content.id));
    target_coords.push_back(std::move(coords));
  }

  std::size_t bunch_rows = 0;
  std::vector<std::size_t> row_offset;
  for (const auto& b : system.bunches()) {
    row_offset.push_back(bunch_rows);
    bunch_rows += b.atom_count();
  }

  LinearSystem lp;
  lp.constraint_matrix.assign(bunch_rows + targets.size(), std::vector<Rational>(atoms));
  lp.rhs.reserve(bunch_rows + targets.size());
  for (const auto& b : system.bunches()) lp.rhs.insert(lp.rhs.end(), b.joint().begin(), b.joint().end());
  for (const auto& t : targets) lp.rhs.push_back(t.required_equality_probability);

  lp.variable_names.reserve(atoms);
  for (std::size_t flat = 0; flat < atoms; ++flat) {
    const auto atom = decode_atom(flat, supports);
    std::string name;
    for (std::size_t k = 0; k < atom.size(); ++k) name += (k ? " " : "") + (*supports[k])[atom[k]].label;
    lp.variable_names.push_back(std::move(name));

    std::size_t coord = 0;
    for (std::size_t bi = 0; bi < system.bunches().size(); ++bi) {
      const auto& b = system.bunches()[bi];
      std::span<const std::size_t> part(atom.data() + coord, b.arity());
      lp.constraint_matrix[row_offset[bi] + b.encode(part)][flat] = Rational(1);
      coord += b.arity();
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (all_equal(atom, target_coords[t], supports)) lp.constraint_matrix[bunch_rows + t][flat] = Rational(1);
    }
  }
  return lp;
}

std::optional<Coupling> couple_with_equality_targets(const System& system,
                                                     std::span<const ConnectionTarget> targets) {
  for (const auto& t : targets) {
    if (t.required_equality_probability.sign() < 0 || t.required_equality_probability > Rational(1)) {
      throw Error(ErrorCode::InvalidTarget, "target for " + quote(t.content.id) + " is " +
                                                t.required_equality_probability.str() + ", outside [0, 1]");
    }
  }
  const auto lp = coupling_linear_system(system, targets);
  const auto result = solve_feasibility(lp);
  if (!result.feasible()) return std::nullopt;

  auto coupling = empty_coupling(system);
  const auto supports = coordinate_supports(system);
  const auto& x = *result.witness;
  for (std::size_t flat = 0; flat < x.size(); ++flat) {
    if (!x[flat].is_zero()) coupling.atoms.emplace(decode_atom(flat, supports), x[flat]);
  }
  return coupling;
}

std::vector<ConnectionTarget> maximal_targets(const System& system) {
  std::vector<ConnectionTarget> targets;
  for (const auto& conn : system.shared_connections()) {
    if (conn.observables.size() > 2) {
      throw Error(ErrorCode::ConnectionArityUnsupported,
                  "content " + quote(conn.content.id) + " is measured in " + std::to_string(conn.observables.size()) +
                      " contexts; maximal connectedness is defined here for pairs only");
    }
    targets.push_back({conn.content, max_equality_probability(system.marginal(conn.observables[0]),
                                                              system.marginal(conn.observables[1]))});
  }
  return targets;
}

std::optional<Coupling> maximally_connected_coupling(const System& system) {
  return couple_with_equality_targets(system, maximal_targets(system));
}

// ---------------------------------------------------------------------------
// Verification

CouplingReport verify_coupling(const Coupling& coupling) {
  CouplingReport report;
  const auto& system = coupling.system;
  const auto supports = coordinate_supports(system);
  if (coupling.observables != system.observables()) {
    report.ok = false;
    report.problems.push_back("observable list does not match the system");
    return report;
  }
  for (const auto& [atom, m] : coupling.atoms) {
    bool in_range = atom.size() == supports.size();
    for (std::size_t k = 0; in_range && k < atom.size(); ++k) in_range = atom[k] < supports[k]->size();
    if (!in_range) {
      report.ok = false;
      report.problems.push_back("atom outside the observable supports");
      return report;
    }
    if (m.sign() < 0) {
      report.ok = false;
      report.problems.push_back("negative atom mass " + m.str());
    }
  }
  if (const auto total = coupling.total_mass(); total != Rational(1)) {
    report.ok = false;
    report.problems.push_back("atom masses sum to " + total.str());
  }

  std::size_t coord = 0;
  for (const auto& b : system.bunches()) {
    std::vector<Rational> projected(b.atom_count());
    for (const auto& [atom, m] : coupling.atoms) {
      std::span<const std::size_t> part(atom.data() + coord, b.arity());
      projected[b.encode(part)] += m;
    }
    for (std::size_t flat = 0; flat < b.atom_count(); ++flat) {
      if (projected[flat] != b.joint()[flat]) {
        report.ok = false;
        report.violations.push_back({b.context().id, b.labels(flat), b.joint()[flat], projected[flat]});
      }
    }
    coord += b.arity();
  }
  return report;
}

}  // namespace couplecheck
