#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypertrace/bessel.hpp"
#include "hypertrace/decompositions.hpp"
#include "hypertrace/geodesic_cycles.hpp"
#include "hypertrace/io.hpp"
#include "hypertrace/kernel_bounds.hpp"
#include "hypertrace/lattice_orbits.hpp"
#include "hypertrace/lorentz.hpp"
#include "hypertrace/selberg.hpp"

namespace py = pybind11;
using namespace hypertrace;

namespace {

Subgroup subgroup_from(const std::string& s) {
  static const std::pair<const char*, Subgroup> names[] = {
      {"G", Subgroup::G},   {"K", Subgroup::K},   {"A", Subgroup::A},   {"N", Subgroup::N},
      {"M", Subgroup::M},   {"G0", Subgroup::G0}, {"K0", Subgroup::K0}, {"AN0", Subgroup::AN0}};
  for (const auto& [n, v] : names)
    if (s == n) return v;
  throw InvalidInput("unknown subgroup '" + s + "'");
}

py::dict identity_dict(const IdentityCheck& c) {
  py::dict d;
  d["lhs"] = c.lhs;
  d["rhs"] = c.rhs;
  d["rel_err"] = c.rel_err;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hypertrace, m) {
  m.doc() = "hypertrace core bindings";
  m.attr("__version__") = "0.1.0";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", PyExc_ValueError);
  py::register_exception<OptimizerError>(m, "OptimizerError", PyExc_RuntimeError);

  py::class_<LorentzMatrix>(m, "LorentzMatrix")
      .def_static("from_matrix", &LorentzMatrix::from_matrix, py::arg("m"), py::arg("tol") = kGroupTol)
      .def_static("identity", &LorentzMatrix::identity)
      .def_property_readonly("matrix", &LorentzMatrix::matrix)
      .def_property_readonly("dim", &LorentzMatrix::dim)
      .def("inverse", &LorentzMatrix::inverse)
      .def("form_defect", &LorentzMatrix::form_defect)
      .def("__matmul__", [](const LorentzMatrix& a, const LorentzMatrix& b) { return a * b; });

  py::class_<CycleConfig>(m, "CycleConfig")
      .def(py::init<int, int>(), py::arg("d"), py::arg("n"))
      .def_property_readonly("d", &CycleConfig::d)
      .def_property_readonly("n", &CycleConfig::n)
      .def_property_readonly("rho", &CycleConfig::rho)
      .def_property_readonly("rho0", &CycleConfig::rho0);

  m.def("make_boost", &make_boost, py::arg("x"), py::arg("d"));
  m.def("make_unipotent", &make_unipotent, py::arg("u"));
  m.def("make_rotation", &make_rotation, py::arg("k"));
  m.def("spin_cover_so13", &spin_cover_so13, py::arg("m"));
  m.def(
      "check_membership",
      [](const LorentzMatrix& g, const std::string& s, std::optional<CycleConfig> cfg, double tol) {
        return cfg ? check_membership(g, subgroup_from(s), *cfg, tol) : check_membership(g, subgroup_from(s), tol);
      },
      py::arg("g"), py::arg("subgroup"), py::arg("cfg") = py::none(), py::arg("tol") = kGroupTol);

  m.def("iwasawa_nak", [](const LorentzMatrix& g) {
    const NakFactors f = iwasawa_nak(g);
    return py::make_tuple(f.n, f.a, f.k, f.w, f.x);
  });
  m.def("iwasawa_ank", [](const LorentzMatrix& g) {
    const AnkFactors f = iwasawa_ank(g);
    return py::make_tuple(f.a, f.n, f.k, f.r0, f.w0);
  });
  m.def("cartan_kak", [](const LorentzMatrix& g) {
    const KakFactors f = cartan_kak(g);
    return py::make_tuple(f.k1, f.t, f.k2);
  });

  m.def("from_horospherical", [](const Vector& u, double r) {
    return from_horospherical(HorospherVector(u, r)).coords();
  });
  m.def("to_horospherical", [](const Vector& p) {
    const HorospherVector h = to_horospherical(HyperboloidPoint::from_coords(p));
    return py::make_tuple(h.u, h.r);
  });
  m.def("dist", [](const Vector& p, const Vector& q) {
    return dist(HyperboloidPoint::from_coords(p), HyperboloidPoint::from_coords(q));
  });
  m.def("dist_horospherical", [](const Vector& u, double r, const Vector& v, double t) {
    return dist_horospherical(HorospherVector(u, r), HorospherVector(v, t));
  });

  m.def("bessel_k", &bessel_k, py::arg("order"), py::arg("x"));
  m.def("bessel_k_log", [](Complex order, double x) {
    const ScaledComplex s = bessel_k_log(order, x);
    return py::make_tuple(s.mantissa, s.log_scale);
  });

  m.def("selberg_transform_closed", [](int d, double mu, Complex nu) {
    return selberg_transform_closed(d, mu, SpectralParam(nu, d));
  });
  m.def("selberg_transform_quadrature", [](int d, double mu, Complex nu) {
    return selberg_transform_quadrature(d, mu, SpectralParam(nu, d));
  });
  m.def("gr_identity_3_471_9", [](double a, double b, Complex o) { return identity_dict(gr_identity_3_471_9(a, b, o)); });
  m.def("gr_identity_6_726_4", [](double a, double b, double c, Complex o, bool plus) {
    return identity_dict(gr_identity_6_726_4(a, b, c, o, plus ? Sign::Plus : Sign::Minus));
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("order"), py::arg("plus") = true);
  m.def("gr_identity_6_592_12", [](double a, double b, double c, Complex z) {
    return identity_dict(gr_identity_6_592_12(a, b, c, z));
  });

  m.def("cycle_invariants", [](const LorentzMatrix& g, const Vector& u, const CycleConfig& cfg) {
    const CycleInvariants inv = cycle_invariants(g, u, cfg);
    py::dict d;
    d["M"] = inv.M;
    d["N_u"] = inv.N_u;
    d["Q_u"] = inv.Q_u;
    d["beta"] = inv.beta;
    d["u11"] = inv.u11;
    d["m"] = inv.m;
    d["n"] = inv.n_coeffs;
    d["delta"] = std::max(1.0, inv.delta_raw());
    return d;
  });
  m.def("delta_u", &delta_u);
  m.def("cycle_distance", &cycle_distance);
  m.def("verify_f_geometric", [](const LorentzMatrix& g, const Vector& u, double r, const CycleConfig& cfg) {
    const GeometricCheck c = verify_f_geometric(g, u, r, cfg);
    return py::make_tuple(c.closed_form_dist, c.bruteforce_dist);
  });

  m.def(
      "delta_table",
      [](const std::string& gens_path, const CycleConfig& cfg, const Vector& u, int max_len, bool double_mode) {
        const GeneratorSet gens = load_generators(gens_path);
        const Ball ball = ball_enumerate(gens, max_len);
        const OrbitTable sk = coset_reduce(ball.elements, cfg, double_mode ? CosetMode::Double : CosetMode::Left);
        const OrbitTable t = delta_spectrum(sk, u, cfg);
        py::list rows;
        for (const auto& e : t.entries) {
          py::dict r;
          r["word"] = e.word;
          r["word_length"] = e.length;
          r["M"] = e.M;
          r["N_u"] = e.N;
          r["Q_u"] = e.Q;
          r["delta_u"] = e.delta;
          rows.append(r);
        }
        return rows;
      },
      py::arg("gens_path"), py::arg("cfg"), py::arg("u"), py::arg("max_len"), py::arg("double_mode") = false);
  m.def("ball_size", [](const std::string& gens_path, int max_len) {
    return ball_enumerate(load_generators(gens_path), max_len).elements.size();
  });

  m.def("f_total_integral", [](int d, double mu) {
    const Comparison c = f_total_integral(d, mu);
    return py::make_tuple(c.closed, c.quadrature, c.rel_err);
  });
  m.def("sigma0_model", [](const CycleConfig& cfg, double mu, Complex nu,
                           std::vector<std::pair<double, double>> v, double r_min, double r_max) {
    const ComplexComparison c = sigma0_model(cfg, mu, nu, BoxDomain(std::move(v), r_min, r_max));
    return py::make_tuple(c.closed, c.quadrature, c.rel_err);
  });
  m.def("j_gamma_log", [](const LorentzMatrix& g, std::vector<std::pair<double, double>> range,
                          const CycleConfig& cfg, double mu, Complex nu) {
    const JGammaResult j = j_gamma_quadrature(g, range, cfg, mu, nu);
    return py::make_tuple(j.degenerate, j.log_abs, j.delta_min);
  });
  m.def("weyl_count", &weyl_count, py::arg("x"), py::arg("d"), py::arg("volume"));
  m.def("spectral_tail", [](int d, double volume, double r_max, double cutoff) {
    const TailBound t = spectral_tail_bound(SpectrumModel::synthetic_weyl(d, volume, r_max), 1.0, cutoff);
    return py::make_tuple(t.tail, t.partial_sum_delta);
  });
  m.def("rescaled_limit_shape", [](const CycleConfig& cfg, const std::vector<double>& mus, Complex nu,
                                   std::vector<std::pair<double, double>> v, double r_min, double r_max) {
    const auto rows = rescaled_limit_shape(cfg, mus, nu, BoxDomain(std::move(v), r_min, r_max));
    py::list out;
    for (const auto& r : rows) out.append(py::make_tuple(r.mu, r.value_log, r.sign, r.envelope_log));
    return out;
  });
}
