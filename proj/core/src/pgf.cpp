#include "isingtree/pgf.hpp"

#include <algorithm>
#include <string>

#include "isingtree/errors.hpp"

namespace isingtree {

PgfEvaluator::PgfEvaluator(const MeanParamIsing& model)
    : model_(&model), d_(model.vertex_count()) {
  const RootedTree& rt = model.rooted_tree();
  parent_pos_.resize(d_);
  vertex_at_.resize(d_);
  c00_.resize(d_);
  c01_.resize(d_);
  c10_.resize(d_);
  c11_.resize(d_);
  for (std::size_t pos = 0; pos < d_; ++pos) {
    const Vertex v = rt.order()[pos];
    vertex_at_[pos] = v;
    if (pos == 0) {
      parent_pos_[pos] = 0;
      continue;
    }
    parent_pos_[pos] = rt.position(rt.parent(v));
    c00_[pos] = model.conditional_pmf(v, 0, 0);
    c01_[pos] = model.conditional_pmf(v, 1, 0);
    c10_[pos] = model.conditional_pmf(v, 0, 1);
    c11_[pos] = model.conditional_pmf(v, 1, 1);
  }
  root_q1_ = model.q(rt.root());
  root_q0_ = 1.0 - root_q1_;
}

PgfEvaluator::Scratch PgfEvaluator::make_scratch() const {
  Scratch s;
  s.acc_zeta.resize(d_);
  s.acc_xi.resize(d_);
  return s;
}

Cx PgfEvaluator::run(std::span<const Cx> t, bool diagonal, PgfMode mode,
                     Scratch& scratch) const {
  auto& acc_zeta = scratch.acc_zeta;
  auto& acc_xi = scratch.acc_xi;
  if (acc_zeta.size() != d_ || acc_xi.size() != d_)
    throw LengthMismatch("scratch buffers do not match the model dimension");
  const Cx one{1.0, 0.0};
  std::fill(acc_zeta.begin(), acc_zeta.end(), one);
  std::fill(acc_xi.begin(), acc_xi.end(), one);

  // Leaf-to-root: children occupy later positions, so a reverse sweep sees
  // every child before its parent. acc_* hold the running products of the
  // children's zeta/xi values.
  for (std::size_t pos = d_ - 1; pos > 0; --pos) {
    const Cx tv = diagonal ? t[0] : t[vertex_at_[pos]];
    const Cx branch0 = acc_zeta[pos];
    const Cx branch1 = tv * acc_xi[pos];
    const Cx zeta = c00_[pos] * branch0 + c01_[pos] * branch1;
    const Cx xi = c10_[pos] * branch0 + c11_[pos] * branch1;
    const std::size_t pa = parent_pos_[pos];
    acc_zeta[pa] *= zeta;
    acc_xi[pa] *= xi;
  }
  const Cx tr = diagonal ? t[0] : t[vertex_at_[0]];
  const Cx xi_root = tr * (root_q1_ * acc_xi[0]);
  if (mode == PgfMode::root_one_branch) return xi_root;
  return root_q0_ * acc_zeta[0] + xi_root;
}

Cx PgfEvaluator::joint(std::span<const Cx> t, Scratch& scratch) const {
  if (t.size() != d_)
    throw LengthMismatch("argument vector has " + std::to_string(t.size()) +
                         " entries for " + std::to_string(d_) + " vertices");
  return run(t, false, PgfMode::full, scratch);
}

Cx PgfEvaluator::sum(Cx t, Scratch& scratch) const {
  const Cx arg[1] = {t};
  return run(arg, true, PgfMode::full, scratch);
}

Cx PgfEvaluator::sum_root_branch(Cx t, Scratch& scratch) const {
  const Cx arg[1] = {t};
  return run(arg, true, PgfMode::root_one_branch, scratch);
}

Cx evaluate_pgf(const PgfRequest& request) {
  if (request.model == nullptr) throw DomainError("request has no model");
  PgfEvaluator eval(*request.model);
  auto scratch = eval.make_scratch();
  if (request.t.size() != request.model->vertex_count())
    throw LengthMismatch("argument vector has " + std::to_string(request.t.size()) +
                         " entries for " +
                         std::to_string(request.model->vertex_count()) + " vertices");
  const bool uniform = request.mode == PgfMode::root_one_branch;
  if (uniform) {
    // The allocation variant is defined for a scalar argument.
    for (const Cx& tv : request.t)
      if (tv.re != request.t[0].re || tv.im != request.t[0].im)
        throw DomainError("root_one_branch mode expects a uniform argument vector");
    return eval.sum_root_branch(request.t[0], scratch);
  }
  return eval.joint(request.t, scratch);
}

Cx joint_pgf(const MeanParamIsing& model, std::span<const Cx> t) {
  PgfEvaluator eval(model);
  auto scratch = eval.make_scratch();
  return eval.joint(t, scratch);
}

Cx sum_pgf(const MeanParamIsing& model, Cx t) {
  PgfEvaluator eval(model);
  auto scratch = eval.make_scratch();
  return eval.sum(t, scratch);
}

Cx ogfea_pgf(const MeanParamIsing& model, Vertex v, Cx t) {
  const MeanParamIsing rerooted =
      model.rooted_tree().root() == v ? model : model.rerooted(v);
  PgfEvaluator eval(rerooted);
  auto scratch = eval.make_scratch();
  return eval.sum_root_branch(t, scratch);
}

}  // namespace isingtree
