#pragma once

// Templated kernel bodies, instantiated once per lane type from a translation
// unit compiled with the matching ISA flags. The arithmetic mirrors the
// canonical Vec3 step sequence term for term; tests assert bitwise equality
// between lanes and against the generic steppers.

#include <cstddef>

#include "llgs/kernels.hpp"
#include "llgs/lanes.hpp"

namespace llgs::kernels::detail {

template <class L>
struct Pack {
  typename L::reg r;
  static Pack load(const double* p) { return {L::load(p)}; }
  static Pack set1(double v) { return {L::set1(v)}; }
  void store(double* p) const { L::store(p, r); }
  friend Pack operator+(Pack a, Pack b) { return {L::add(a.r, b.r)}; }
  friend Pack operator-(Pack a, Pack b) { return {L::sub(a.r, b.r)}; }
  friend Pack operator*(Pack a, Pack b) { return {L::mul(a.r, b.r)}; }
  friend Pack operator/(Pack a, Pack b) { return {L::div(a.r, b.r)}; }
};

template <class L>
struct PVec3 {
  Pack<L> x, y, z;
  friend PVec3 operator+(PVec3 a, PVec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend PVec3 operator-(PVec3 a, PVec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  PVec3 operator*(Pack<L> s) const { return {x * s, y * s, z * s}; }
};

template <class L>
inline PVec3<L> pcross(PVec3<L> a, PVec3<L> b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Broadcast coefficient set.
template <class L>
struct Coef {
  Pack<L> hk, alpha, neg_aprime, neg_aprime_nu;
  PVec3<L> n, N, ha, is;
  explicit Coef(const LlgsCoeffs& c)
      : hk(Pack<L>::set1(c.hk)),
        alpha(Pack<L>::set1(c.alpha)),
        neg_aprime(Pack<L>::set1(-c.aprime)),
        neg_aprime_nu(Pack<L>::set1(c.neg_aprime_nu)),
        n{Pack<L>::set1(c.nx), Pack<L>::set1(c.ny), Pack<L>::set1(c.nz)},
        N{Pack<L>::set1(c.Nx), Pack<L>::set1(c.Ny), Pack<L>::set1(c.Nz)},
        ha{Pack<L>::set1(c.hax), Pack<L>::set1(c.hay), Pack<L>::set1(c.haz)},
        is{Pack<L>::set1(c.isx), Pack<L>::set1(c.isy), Pack<L>::set1(c.isz)} {}
};

// mirrors effective_field_det
template <class L>
inline PVec3<L> pfield(PVec3<L> m, const Coef<L>& k) {
  const Pack<L> s = k.hk * (k.n.x * m.x + k.n.y * m.y + k.n.z * m.z);
  return {(k.ha.x + k.n.x * s) - k.N.x * m.x, (k.ha.y + k.n.y * s) - k.N.y * m.y,
          (k.ha.z + k.n.z * s) - k.N.z * m.z};
}

// mirrors llgs_drift_core on the deterministic field
template <class L>
inline PVec3<L> pdrift(PVec3<L> m, const Coef<L>& k) {
  const PVec3<L> h = pfield(m, k);
  const PVec3<L> t1 = pcross(m, h);
  const PVec3<L> u = pcross(m, k.is);
  const PVec3<L> t2 = pcross(m, u);
  const PVec3<L> t3 = pcross(m, t1);
  return (t1 + t2 + (t3 - u) * k.alpha) * k.neg_aprime;
}

// mirrors llgs_g_apply_core
template <class L>
inline PVec3<L> pgapply(PVec3<L> m, PVec3<L> eta, const Coef<L>& k) {
  const PVec3<L> w = pcross(m, eta);
  const PVec3<L> v = pcross(m, w);
  return (w + v * k.alpha) * k.neg_aprime_nu;
}

template <class L>
void llgs_euler_maruyama_t(double* mx, double* my, double* mz, const double* ex, const double* ey,
                           const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  const Coef<L> k(c);
  const Pack<L> pdt = Pack<L>::set1(dt);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const PVec3<L> m{Pack<L>::load(mx + i), Pack<L>::load(my + i), Pack<L>::load(mz + i)};
    const PVec3<L> eta{Pack<L>::load(ex + i), Pack<L>::load(ey + i), Pack<L>::load(ez + i)};
    const PVec3<L> f0 = pdrift(m, k);
    const PVec3<L> g0 = pgapply(m, eta, k);
    const PVec3<L> out = (m + f0 * pdt) + g0;
    out.x.store(mx + i);
    out.y.store(my + i);
    out.z.store(mz + i);
  }
  if constexpr (L::width > 1)
    llgs_euler_maruyama_t<ScalarLane>(mx + i, my + i, mz + i, ex + i, ey + i, ez + i, n - i, c, dt);
}

template <class L>
void llgs_euler_heun_t(double* mx, double* my, double* mz, const double* ex, const double* ey,
                       const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  const Coef<L> k(c);
  const Pack<L> pdt = Pack<L>::set1(dt);
  const Pack<L> ph = Pack<L>::set1(0.5);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const PVec3<L> m{Pack<L>::load(mx + i), Pack<L>::load(my + i), Pack<L>::load(mz + i)};
    const PVec3<L> eta{Pack<L>::load(ex + i), Pack<L>::load(ey + i), Pack<L>::load(ez + i)};
    const PVec3<L> g0 = pgapply(m, eta, k);
    const PVec3<L> pred = m + g0;
    const PVec3<L> f0 = pdrift(m, k);
    const PVec3<L> g1 = pgapply(pred, eta, k);
    const PVec3<L> out = (m + f0 * pdt) + (g0 + g1) * ph;
    out.x.store(mx + i);
    out.y.store(my + i);
    out.z.store(mz + i);
  }
  if constexpr (L::width > 1)
    llgs_euler_heun_t<ScalarLane>(mx + i, my + i, mz + i, ex + i, ey + i, ez + i, n - i, c, dt);
}

template <class L>
void llgs_heun_t(double* mx, double* my, double* mz, const double* ex, const double* ey,
                 const double* ez, std::size_t n, const LlgsCoeffs& c, double dt) {
  const Coef<L> k(c);
  const Pack<L> pdt = Pack<L>::set1(dt);
  const Pack<L> phdt = Pack<L>::set1(0.5 * dt);
  const Pack<L> ph = Pack<L>::set1(0.5);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const PVec3<L> m{Pack<L>::load(mx + i), Pack<L>::load(my + i), Pack<L>::load(mz + i)};
    const PVec3<L> eta{Pack<L>::load(ex + i), Pack<L>::load(ey + i), Pack<L>::load(ez + i)};
    const PVec3<L> f0 = pdrift(m, k);
    const PVec3<L> g0 = pgapply(m, eta, k);
    const PVec3<L> pred = (m + f0 * pdt) + g0;
    const PVec3<L> f1 = pdrift(pred, k);
    const PVec3<L> g1 = pgapply(pred, eta, k);
    const PVec3<L> out = (m + (f0 + f1) * phdt) + (g0 + g1) * ph;
    out.x.store(mx + i);
    out.y.store(my + i);
    out.z.store(mz + i);
  }
  if constexpr (L::width > 1)
    llgs_heun_t<ScalarLane>(mx + i, my + i, mz + i, ex + i, ey + i, ez + i, n - i, c, dt);
}

template <class L>
void llgs_rk4_heun_t(double* mx, double* my, double* mz, const double* ex, const double* ey,
                     const double* ez, std::size_t n, const LlgsCoeffs& c, double dt,
                     bool corrected) {
  const Coef<L> k(c);
  const Pack<L> pdt = Pack<L>::set1(dt);
  const Pack<L> ph = Pack<L>::set1(0.5);
  const Pack<L> p2 = Pack<L>::set1(2.0);
  const Pack<L> p6 = Pack<L>::set1(1.0 / 6.0);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const PVec3<L> m{Pack<L>::load(mx + i), Pack<L>::load(my + i), Pack<L>::load(mz + i)};
    const PVec3<L> eta{Pack<L>::load(ex + i), Pack<L>::load(ey + i), Pack<L>::load(ez + i)};
    const PVec3<L> d1 = pdrift(m, k);
    const PVec3<L> s1 = pgapply(m, eta, k);
    const PVec3<L> s2 = pgapply((m + d1 * pdt) + s1, eta, k);
    const PVec3<L> d2 = pdrift(m + (d1 * pdt + s1) * ph, k);
    const PVec3<L> d3 = pdrift(m + (d2 * pdt + s1) * ph, k);
    const PVec3<L> d4 = pdrift((m + d3 * pdt) + s1, k);
    const PVec3<L> D = (d1 + d2 * p2 + d3 * p2 + d4) * p6;
    PVec3<L> out = (m + D * pdt) + (s1 + s2) * ph;
    if (corrected) {
      const PVec3<L> s2c = pgapply(out, eta, k);
      out = (m + D * pdt) + (s1 + s2c) * ph;
    }
    out.x.store(mx + i);
    out.y.store(my + i);
    out.z.store(mz + i);
  }
  if constexpr (L::width > 1)
    llgs_rk4_heun_t<ScalarLane>(mx + i, my + i, mz + i, ex + i, ey + i, ez + i, n - i, c, dt,
                                corrected);
}

// ---- scalar geometric SDE dX = a X dt + b X o dW ----

template <class L>
void gsde_euler_heun_t(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  const Pack<L> pa = Pack<L>::set1(a), pb = Pack<L>::set1(b), pdt = Pack<L>::set1(dt);
  const Pack<L> ph = Pack<L>::set1(0.5);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const Pack<L> X = Pack<L>::load(x + i), E = Pack<L>::load(eta + i);
    const Pack<L> g0 = (pb * X) * E;
    const Pack<L> pred = X + g0;
    const Pack<L> f0 = pa * X;
    const Pack<L> g1 = (pb * pred) * E;
    ((X + f0 * pdt) + (g0 + g1) * ph).store(x + i);
  }
  if constexpr (L::width > 1) gsde_euler_heun_t<ScalarLane>(x + i, eta + i, n - i, a, b, dt);
}

template <class L>
void gsde_heun_t(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  const Pack<L> pa = Pack<L>::set1(a), pb = Pack<L>::set1(b), pdt = Pack<L>::set1(dt);
  const Pack<L> phdt = Pack<L>::set1(0.5 * dt), ph = Pack<L>::set1(0.5);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const Pack<L> X = Pack<L>::load(x + i), E = Pack<L>::load(eta + i);
    const Pack<L> f0 = pa * X;
    const Pack<L> g0 = (pb * X) * E;
    const Pack<L> pred = (X + f0 * pdt) + g0;
    const Pack<L> f1 = pa * pred;
    const Pack<L> g1 = (pb * pred) * E;
    ((X + (f0 + f1) * phdt) + (g0 + g1) * ph).store(x + i);
  }
  if constexpr (L::width > 1) gsde_heun_t<ScalarLane>(x + i, eta + i, n - i, a, b, dt);
}

template <class L>
void gsde_midpoint_t(double* x, const double* eta, std::size_t n, double a, double b, double dt) {
  const Pack<L> pa = Pack<L>::set1(a), pb = Pack<L>::set1(b), pdt = Pack<L>::set1(dt);
  const Pack<L> p2 = Pack<L>::set1(2.0);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const Pack<L> X = Pack<L>::load(x + i), E = Pack<L>::load(eta + i);
    const Pack<L> c = pa * pdt + pb * E;
    (X * ((p2 + c) / (p2 - c))).store(x + i);
  }
  if constexpr (L::width > 1) gsde_midpoint_t<ScalarLane>(x + i, eta + i, n - i, a, b, dt);
}

template <class L>
void gsde_rk4_heun_t(double* x, const double* eta, std::size_t n, double a, double b, double dt,
                     bool corrected) {
  const Pack<L> pa = Pack<L>::set1(a), pb = Pack<L>::set1(b), pdt = Pack<L>::set1(dt);
  const Pack<L> ph = Pack<L>::set1(0.5), p2 = Pack<L>::set1(2.0), p6 = Pack<L>::set1(1.0 / 6.0);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const Pack<L> X = Pack<L>::load(x + i), E = Pack<L>::load(eta + i);
    const Pack<L> d1 = pa * X;
    const Pack<L> s1 = (pb * X) * E;
    const Pack<L> s2 = (pb * ((X + d1 * pdt) + s1)) * E;
    const Pack<L> d2 = pa * (X + (d1 * pdt + s1) * ph);
    const Pack<L> d3 = pa * (X + (d2 * pdt + s1) * ph);
    const Pack<L> d4 = pa * ((X + d3 * pdt) + s1);
    const Pack<L> D = (d1 + d2 * p2 + d3 * p2 + d4) * p6;
    Pack<L> out = (X + D * pdt) + (s1 + s2) * ph;
    if (corrected) {
      const Pack<L> s2c = (pb * out) * E;
      out = (X + D * pdt) + (s1 + s2c) * ph;
    }
    out.store(x + i);
  }
  if constexpr (L::width > 1) gsde_rk4_heun_t<ScalarLane>(x + i, eta + i, n - i, a, b, dt, corrected);
}

template <class L>
void gsde_adams_t(double* x, double* x_prev, const double* eta, std::size_t n, double a, double b,
                  double dt) {
  const Pack<L> pa = Pack<L>::set1(a), pb = Pack<L>::set1(b), pdt = Pack<L>::set1(dt);
  const Pack<L> p15 = Pack<L>::set1(1.5), ph = Pack<L>::set1(0.5);
  std::size_t i = 0;
  for (; i + L::width <= n; i += L::width) {
    const Pack<L> X = Pack<L>::load(x + i), Xp = Pack<L>::load(x_prev + i),
                  E = Pack<L>::load(eta + i);
    const Pack<L> mid = X * p15 - Xp * ph;
    const Pack<L> out = (X + (pa * mid) * pdt) + ((pb * mid) * E);
    X.store(x_prev + i);
    out.store(x + i);
  }
  if constexpr (L::width > 1) gsde_adams_t<ScalarLane>(x + i, x_prev + i, eta + i, n - i, a, b, dt);
}

}  // namespace llgs::kernels::detail
