#include "couplecheck/system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace couplecheck {

namespace {

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

Rational total(std::span<const Rational> masses) {
  return std::accumulate(masses.begin(), masses.end(), Rational(0));
}

std::string join_labels(std::span<const std::string> labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : " ") + l;
  return out;
}

}  // namespace

std::optional<std::size_t> Context::position_of(const Content& content) const {
  const auto it = std::find(measured.begin(), measured.end(), content);
  if (it == measured.end()) return std::nullopt;
  return static_cast<std::size_t>(it - measured.begin());
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(std::vector<Value> support, std::vector<Rational> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.empty()) throw Error(ErrorCode::MissingSupport, "distribution has an empty support");
  if (support_.size() != masses_.size()) {
    throw Error(ErrorCode::ArityMismatch, "support and mass lists differ in length");
  }
  std::set<Value> seen;
  for (const auto& v : support_) {
    if (!seen.insert(v).second) throw Error(ErrorCode::DuplicateValue, "value " + quote(v.label) + " repeats");
  }
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i].sign() < 0) {
      throw Error(ErrorCode::NegativeMass, "value " + quote(support_[i].label) + " has mass " + masses_[i].str());
    }
  }
  if (const auto sum = total(masses_); sum != Rational(1)) {
    throw Error(ErrorCode::MassNotNormalized, "masses sum to " + sum.str());
  }
}

Distribution Distribution::point(Value v) { return Distribution({std::move(v)}, {Rational(1)}); }

Distribution Distribution::uniform(std::vector<Value> support) {
  const auto n = static_cast<std::int64_t>(support.size());
  if (n == 0) throw Error(ErrorCode::MissingSupport, "uniform distribution over an empty support");
  std::vector<Rational> masses(support.size(), Rational(1, n));
  return Distribution(std::move(support), std::move(masses));
}

Distribution Distribution::binary(const Rational& p_plus) {
  return Distribution({Value{"+1"}, Value{"-1"}}, {p_plus, Rational(1) - p_plus});
}

std::optional<std::size_t> Distribution::index_of(const Value& v) const {
  const auto it = std::find(support_.begin(), support_.end(), v);
  if (it == support_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

Rational Distribution::mass(const Value& v) const {
  const auto i = index_of(v);
  return i ? masses_[*i] : Rational(0);
}

Rational Distribution::probability(std::span<const Value> event) const {
  std::set<Value> distinct(event.begin(), event.end());
  Rational p;
  for (const auto& v : distinct) p += mass(v);
  return p;
}

bool same_law(const Distribution& a, const Distribution& b) {
  for (const auto& v : a.support()) {
    if (a.mass(v) != b.mass(v)) return false;
  }
  for (const auto& v : b.support()) {
    if (a.mass(v) != b.mass(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bunch

Bunch::Bunch(Context context, std::vector<std::vector<Value>> supports, std::vector<Rational> joint)
    : context_(std::move(context)), supports_(std::move(supports)), joint_(std::move(joint)) {
  const auto& ctx = context_.id;
  if (context_.measured.empty()) throw Error(ErrorCode::EmptyContext, "context " + quote(ctx) + " measures nothing");
  std::set<Content> seen;
  for (const auto& c : context_.measured) {
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::RepeatedContent, "content " + quote(c.id) + " repeats in context " + quote(ctx));
    }
  }
  if (supports_.size() != context_.measured.size()) {
    throw Error(ErrorCode::ArityMismatch, "context " + quote(ctx) + " has " +
                                              std::to_string(context_.measured.size()) + " contents but " +
                                              std::to_string(supports_.size()) + " supports");
  }
  std::size_t atoms = 1;
  for (std::size_t k = 0; k < supports_.size(); ++k) {
    const auto& s = supports_[k];
    if (s.empty()) {
      throw Error(ErrorCode::MissingSupport,
                  "content " + quote(context_.measured[k].id) + " in context " + quote(ctx) + " has an empty support");
    }
    std::set<Value> values(s.begin(), s.end());
    if (values.size() != s.size()) {
      throw Error(ErrorCode::DuplicateValue,
                  "support of " + quote(context_.measured[k].id) + " in context " + quote(ctx) + " repeats a value");
    }
    atoms *= s.size();
  }
  if (joint_.size() != atoms) {
    throw Error(ErrorCode::ArityMismatch, "context " + quote(ctx) + " expects " + std::to_string(atoms) +
                                              " joint masses, got " + std::to_string(joint_.size()));
  }
  for (std::size_t i = 0; i < joint_.size(); ++i) {
    if (joint_[i].sign() < 0) {
      throw Error(ErrorCode::NegativeMass, "context " + quote(ctx) + " has negative mass " + joint_[i].str());
    }
  }
  if (const auto sum = total(joint_); sum != Rational(1)) {
    throw Error(ErrorCode::MassNotNormalized, "context " + quote(ctx) + " masses sum to " + sum.str());
  }
}

std::vector<std::size_t> Bunch::decode(std::size_t flat) const {
  std::vector<std::size_t> idx(supports_.size());
  for (std::size_t k = supports_.size(); k-- > 0;) {
    idx[k] = flat % supports_[k].size();
    flat /= supports_[k].size();
  }
  return idx;
}

std::size_t Bunch::encode(std::span<const std::size_t> indices) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < supports_.size(); ++k) flat = flat * supports_[k].size() + indices[k];
  return flat;
}

std::vector<Value> Bunch::labels(std::size_t flat) const {
  const auto idx = decode(flat);
  std::vector<Value> out;
  out.reserve(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out.push_back(supports_[k][idx[k]]);
  return out;
}

Rational Bunch::mass(std::span<const Value> tuple) const {
  if (tuple.size() != supports_.size()) return Rational(0);
  std::vector<std::size_t> idx(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const auto& s = supports_[k];
    const auto it = std::find(s.begin(), s.end(), tuple[k]);
    if (it == s.end()) return Rational(0);
    idx[k] = static_cast<std::size_t>(it - s.begin());
  }
  return joint_[encode(idx)];
}

Bunch product_bunch(Context context, std::span<const Distribution> factors) {
  std::vector<std::vector<Value>> supports;
  std::size_t atoms = 1;
  for (const auto& d : factors) {
    supports.push_back(d.support());
    atoms *= d.support().size();
  }
  std::vector<Rational> joint(atoms, Rational(1));
  for (std::size_t flat = 0; flat < atoms; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = factors.size(); k-- > 0;) {
      const auto n = factors[k].support().size();
      joint[flat] *= factors[k].masses()[rest % n];
      rest /= n;
    }
  }
  return Bunch(std::move(context), std::move(supports), std::move(joint));
}

Distribution marginal(const Bunch& bunch, const Content& target) {
  const auto pos = bunch.context().position_of(target);
  if (!pos) {
    throw Error(ErrorCode::ContentNotInContext,
                "content " + quote(target.id) + " is not measured in context " + quote(bunch.context().id));
  }
  const auto& support = bunch.supports()[*pos];
  std::vector<Rational> masses(support.size());
  for (std::size_t flat = 0; flat < bunch.atom_count(); ++flat) {
    masses[bunch.decode(flat)[*pos]] += bunch.joint()[flat];
  }
  return Distribution(support, std::move(masses));
}

std::vector<PairIndependence> product_independence_test(const Bunch& bunch) {
  const auto& measured = bunch.context().measured;
  if (measured.size() < 2) {
    throw Error(ErrorCode::ArityMismatch,
                "independence test needs at least two contents in context " + quote(bunch.context().id));
  }
  std::vector<Distribution> marginals;
  for (const auto& c : measured) marginals.push_back(marginal(bunch, c));

  std::vector<PairIndependence> out;
  for (std::size_t a = 0; a < measured.size(); ++a) {
    for (std::size_t b = a + 1; b < measured.size(); ++b) {
      const auto na = bunch.supports()[a].size();
      const auto nb = bunch.supports()[b].size();
      std::vector<Rational> pair(na * nb);
      for (std::size_t flat = 0; flat < bunch.atom_count(); ++flat) {
        const auto idx = bunch.decode(flat);
        pair[idx[a] * nb + idx[b]] += bunch.joint()[flat];
      }
      bool independent = true;
      for (std::size_t i = 0; i < na && independent; ++i) {
        for (std::size_t j = 0; j < nb && independent; ++j) {
          independent = pair[i * nb + j] == marginals[a].masses()[i] * marginals[b].masses()[j];
        }
      }
      out.push_back({measured[a], measured[b], independent});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// System

std::vector<Context> System::contexts() const {
  std::vector<Context> out;
  out.reserve(bunches_.size());
  for (const auto& b : bunches_) out.push_back(b.context());
  return out;
}

const Bunch& System::bunch(std::string_view context) const {
  const auto it = std::lower_bound(bunches_.begin(), bunches_.end(), context,
                                   [](const Bunch& b, std::string_view id) { return b.context().id < id; });
  if (it == bunches_.end() || it->context().id != context) {
    throw Error(ErrorCode::UnknownContext, "no context " + quote(context));
  }
  return *it;
}

bool System::has_content(const Content& content) const {
  return std::binary_search(contents_.begin(), contents_.end(), content);
}

std::vector<Observable> System::observables() const {
  std::vector<Observable> out;
  for (const auto& b : bunches_) {
    for (const auto& c : b.context().measured) out.push_back({c, b.context().id});
  }
  return out;
}

const std::vector<Value>& System::support(const Observable& obs) const {
  const auto& b = bunch(obs.context);
  const auto pos = b.context().position_of(obs.content);
  if (!pos) {
    throw Error(ErrorCode::ContentNotInContext,
                "content " + quote(obs.content.id) + " is not measured in context " + quote(obs.context));
  }
  return b.supports()[*pos];
}

Distribution System::marginal(const Observable& obs) const {
  return couplecheck::marginal(bunch(obs.context), obs.content);
}

std::vector<Connection> System::connections() const {
  std::vector<Connection> out;
  for (const auto& c : contents_) out.push_back({c, {}});
  for (const auto& obs : observables()) {
    const auto it = std::lower_bound(out.begin(), out.end(), obs.content,
                                     [](const Connection& conn, const Content& c) { return conn.content < c; });
    it->observables.push_back(obs);
  }
  return out;
}

std::vector<Connection> System::shared_connections() const {
  auto all = connections();
  std::erase_if(all, [](const Connection& c) { return c.observables.size() < 2; });
  return all;
}

// ---------------------------------------------------------------------------
// Validation

System validate_system(const RawSystem& raw) {
  std::vector<Violation> violations;
  auto report = [&](ErrorCode code, std::string message, std::string section, int line) {
    violations.push_back({code, std::move(message), std::move(section), line});
  };

  std::set<std::string> contents;
  for (const auto& c : raw.contents) {
    if (!contents.insert(c).second) {
      report(ErrorCode::DuplicateContent, "content " + quote(c) + " declared twice", "contents", raw.contents_line);
    }
  }

  std::map<std::string, const RawContext*> contexts;
  std::set<std::string> used_contents;
  for (const auto& ctx : raw.contexts) {
    if (!contexts.emplace(ctx.id, &ctx).second) {
      report(ErrorCode::DuplicateContext, "context " + quote(ctx.id) + " declared twice", "contexts", ctx.line);
      continue;
    }
    if (ctx.measured.empty()) {
      report(ErrorCode::EmptyContext, "context " + quote(ctx.id) + " measures nothing", "contexts", ctx.line);
    }
    std::set<std::string> seen;
    for (const auto& c : ctx.measured) {
      if (!contents.contains(c)) {
        report(ErrorCode::UnknownContent, "context " + quote(ctx.id) + " measures undeclared content " + quote(c),
               "contexts", ctx.line);
      }
      if (!seen.insert(c).second) {
        report(ErrorCode::RepeatedContent, "content " + quote(c) + " repeats in context " + quote(ctx.id),
               "contexts", ctx.line);
      }
      used_contents.insert(c);
    }
  }
  for (const auto& c : contents) {
    if (!used_contents.contains(c)) {
      report(ErrorCode::OrphanContent, "content " + quote(c) + " is measured in no context", "contents",
             raw.contents_line);
    }
  }

  // (context, content) -> support
  std::map<std::pair<std::string, std::string>, const RawSupport*> supports;
  for (const auto& s : raw.supports) {
    const auto ctx = contexts.find(s.context);
    if (ctx == contexts.end()) {
      report(ErrorCode::UnknownContext, "support given for undeclared context " + quote(s.context), "supports",
             s.line);
      continue;
    }
    const auto& measured = ctx->second->measured;
    if (std::find(measured.begin(), measured.end(), s.content) == measured.end()) {
      report(ErrorCode::UnknownContent,
             "support given for " + quote(s.content) + " which context " + quote(s.context) + " does not measure",
             "supports", s.line);
      continue;
    }
    if (!supports.emplace(std::pair{s.context, s.content}, &s).second) {
      report(ErrorCode::DuplicateSupport, "support of " + quote(s.content) + " in " + quote(s.context) + " given twice",
             "supports", s.line);
      continue;
    }
    if (s.values.empty()) {
      report(ErrorCode::MissingSupport, "support of " + quote(s.content) + " in " + quote(s.context) + " is empty",
             "supports", s.line);
    }
    std::set<std::string> values;
    for (const auto& v : s.values) {
      if (!values.insert(v).second) {
        report(ErrorCode::DuplicateValue,
               "value " + quote(v) + " repeats in support of " + quote(s.content) + " in " + quote(s.context),
               "supports", s.line);
      }
    }
  }
  for (const auto& [id, ctx] : contexts) {
    for (const auto& c : ctx->measured) {
      if (!supports.contains({id, c})) {
        report(ErrorCode::MissingSupport, "no support declared for " + quote(c) + " in context " + quote(id),
               "supports", ctx->line);
      }
    }
  }

  std::map<std::string, const RawBunch*> bunches;
  for (const auto& b : raw.bunches) {
    const auto ctx = contexts.find(b.context);
    if (ctx == contexts.end()) {
      report(ErrorCode::UnknownContext, "bunch given for undeclared context " + quote(b.context), "bunches", b.line);
      continue;
    }
    if (!bunches.emplace(b.context, &b).second) {
      report(ErrorCode::DuplicateBunch, "context " + quote(b.context) + " has two bunches", "bunches", b.line);
      continue;
    }
    const auto& measured = ctx->second->measured;
    Rational sum;
    std::set<std::vector<std::string>> tuples;
    for (const auto& atom : b.atoms) {
      if (atom.tuple.size() != measured.size()) {
        report(ErrorCode::ArityMismatch,
               "tuple of arity " + std::to_string(atom.tuple.size()) + " in context " + quote(b.context) +
                   " which measures " + std::to_string(measured.size()) + " content(s)",
               "bunches", atom.line);
      } else {
        for (std::size_t k = 0; k < measured.size(); ++k) {
          const auto s = supports.find({b.context, measured[k]});
          if (s == supports.end()) continue;
          const auto& vals = s->second->values;
          if (std::find(vals.begin(), vals.end(), atom.tuple[k]) == vals.end()) {
            report(ErrorCode::ValueNotInSupport,
                   "value " + quote(atom.tuple[k]) + " is not in the support of " + quote(measured[k]) +
                       " in context " + quote(b.context),
                   "bunches", atom.line);
          }
        }
      }
      if (!tuples.insert(atom.tuple).second) {
        report(ErrorCode::DuplicateTuple,
               "tuple (" + join_labels(atom.tuple) + ") repeats in context " + quote(b.context), "bunches",
               atom.line);
      }
      if (atom.mass.sign() < 0) {
        report(ErrorCode::NegativeMass,
               "tuple (" + join_labels(atom.tuple) + ") in context " + quote(b.context) + " has mass " +
                   atom.mass.str(),
               "bunches", atom.line);
      }
      sum += atom.mass;
    }
    if (sum != Rational(1)) {
      report(ErrorCode::MassNotNormalized, "masses of context " + quote(b.context) + " sum to " + sum.str(),
             "bunches", b.line);
    }
  }
  for (const auto& [id, ctx] : contexts) {
    if (!bunches.contains(id)) {
      report(ErrorCode::MissingBunch, "context " + quote(id) + " has no bunch", "bunches", ctx->line);
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));

  std::vector<Bunch> built;
  for (const auto& [id, ctx] : contexts) {
    Context context{id, {}};
    std::vector<std::vector<Value>> bunch_supports;
    for (const auto& c : ctx->measured) {
      context.measured.push_back({c});
      std::vector<Value> values;
      for (const auto& v : supports.at({id, c})->values) values.push_back({v});
      bunch_supports.push_back(std::move(values));
    }
    std::size_t atoms = 1;
    for (const auto& s : bunch_supports) atoms *= s.size();
    std::vector<Rational> joint(atoms);
    for (const auto& atom : bunches.at(id)->atoms) {
      std::size_t flat = 0;
      for (std::size_t k = 0; k < atom.tuple.size(); ++k) {
        const auto& s = bunch_supports[k];
        const auto pos = std::find(s.begin(), s.end(), Value{atom.tuple[k]}) - s.begin();
        flat = flat * s.size() + static_cast<std::size_t>(pos);
      }
      joint[flat] = atom.mass;
    }
    built.emplace_back(std::move(context), std::move(bunch_supports), std::move(joint));
  }
  std::vector<Content> content_list;
  for (const auto& c : contents) content_list.push_back({c});
  return System(std::move(content_list), std::move(built));
}

namespace {

void append_bunch(RawSystem& raw, const Bunch& b) {
  RawContext ctx{b.context().id, {}, 0};
  for (const auto& c : b.context().measured) ctx.measured.push_back(c.id);
  for (std::size_t k = 0; k < b.arity(); ++k) {
    RawSupport s{b.context().id, b.context().measured[k].id, {}, 0};
    for (const auto& v : b.supports()[k]) s.values.push_back(v.label);
    raw.supports.push_back(std::move(s));
  }
  RawBunch rb{b.context().id, {}, 0};
  for (std::size_t flat = 0; flat < b.atom_count(); ++flat) {
    if (b.joint()[flat].is_zero()) continue;
    RawAtom atom{{}, b.joint()[flat], 0};
    for (const auto& v : b.labels(flat)) atom.tuple.push_back(v.label);
    rb.atoms.push_back(std::move(atom));
  }
  raw.contexts.push_back(std::move(ctx));
  raw.bunches.push_back(std::move(rb));
}

}  // namespace

RawSystem to_raw(const System& system) {
  RawSystem raw;
  for (const auto& c : system.contents()) raw.contents.push_back(c.id);
  for (const auto& b : system.bunches()) append_bunch(raw, b);
  return raw;
}

System make_system(std::vector<Bunch> bunches) {
  RawSystem raw;
  std::set<std::string> contents;
  for (const auto& b : bunches) {
    for (const auto& c : b.context().measured) contents.insert(c.id);
    append_bunch(raw, b);
  }
  raw.contents.assign(contents.begin(), contents.end());
  return validate_system(raw);
}

}  // namespace couplecheck
