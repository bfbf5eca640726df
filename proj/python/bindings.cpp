#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "acbm/algebra.hpp"
#include "acbm/classification.hpp"
#include "acbm/cli/io.hpp"
#include "acbm/error.hpp"
#include "acbm/expgroups.hpp"
#include "acbm/fixtures.hpp"
#include "acbm/verify.hpp"

namespace py = pybind11;
using namespace acbm;

namespace {

StructureConstants constants_from(const std::vector<double>& flat) {
  if (flat.size() != 9) throw ValidationError("expected 9 structure constants, got " + std::to_string(flat.size()));
  std::array<double, 9> a;
  std::copy(flat.begin(), flat.end(), a.begin());
  return StructureConstants::from_flat(a);
}

std::vector<double> flat_of(const StructureConstants& c) {
  const auto a = c.flat();
  return {a.begin(), a.end()};
}

py::dict profile_dict(const ClassProfile& p) {
  py::dict d;
  const auto values = p.values();
  for (std::size_t i = 0; i < values.size(); ++i) d[py::str(std::string(ClassProfile::names[i]))] = values[i];
  d["scale"] = p.scale;
  return d;
}

std::vector<std::string> signature_list(const ClassSignature& s) {
  std::vector<std::string> out;
  for (auto c : s.members()) out.emplace_back(to_string(c));
  return out;
}

// F as a nested 3x3x3 list indexed [i][j][k].
std::vector<std::vector<std::vector<double>>> nested(const FTensor& f) {
  std::vector<std::vector<std::vector<double>>> out(3, std::vector<std::vector<double>>(3, std::vector<double>(3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j][k] = f(i, j, k);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Almost contact B-metric Lie algebras: classification and closed-form group exponentials";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<ClassificationError>(m, "ClassificationError", base.ptr());
  py::register_exception<FamilyViolation>(m, "FamilyViolation", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.attr("CLASSES") = std::vector<std::string>{"F1", "F4", "F5", "F8", "F9", "F10", "F11"};

  // Structure constants travel as a flat list C01^0..2, C02^0..2, C12^0..2.
  m.def("jacobi_residual", [](const std::vector<double>& c) { return validate_jacobi(constants_from(c)).max_residual; },
        py::arg("c"));
  m.def("is_lie_algebra",
        [](const std::vector<double>& c, double tol) { return validate_jacobi(constants_from(c), tol).satisfied; },
        py::arg("c"), py::arg("tol") = kJacobiTolerance);

  m.def("f_from_structure", [](const std::vector<double>& c) { return nested(f_from_structure(constants_from(c))); },
        py::arg("c"));
  m.def("f_from_connection", [](const std::vector<double>& c) { return nested(f_from_connection(constants_from(c))); },
        py::arg("c"), "F from the Levi-Civita connection (requires the Jacobi identity)");

  m.def("extract_profile", [](const std::vector<double>& c) { return profile_dict(extract_profile(constants_from(c))); },
        py::arg("c"));
  m.def(
      "classify",
      [](const std::vector<double>& c, double tol) {
        return signature_list(classify(extract_profile(constants_from(c)), tol));
      },
      py::arg("c"), py::arg("tol") = kMembershipTolerance, "basic classes of the algebra; [] means F0");
  m.def(
      "signature",
      [](const std::vector<double>& c, double tol) { return classify(extract_profile(constants_from(c)), tol).to_string(); },
      py::arg("c"), py::arg("tol") = kMembershipTolerance);
  m.def(
      "canonical_algebra",
      [](const std::string& cls, double alpha, double beta) {
        return flat_of(canonical_algebra(parse_basic_class(cls), alpha, beta));
      },
      py::arg("cls"), py::arg("alpha"), py::arg("beta") = 0.0);
  m.def(
      "recover_parameters",
      [](const std::vector<double>& c, const std::string& cls, double tol) {
        const Parameters p = recover_parameters(constants_from(c), parse_basic_class(cls), tol);
        return std::make_pair(p.alpha, p.beta);
      },
      py::arg("c"), py::arg("cls"), py::arg("tol") = kMembershipTolerance);

  m.def(
      "table1_matrix",
      [](const std::string& cls, double alpha, double beta, double a, double b, double c) {
        return table1_matrix(parse_basic_class(cls), alpha, beta, a, b, c);
      },
      py::arg("cls"), py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "exp_coefficients",
      [](const std::string& cls, const Mat3& a, const std::string& mode) {
        const ExpCoefficients k = table1_coefficients(parse_basic_class(cls), a, parse_mode(mode));
        py::dict d;
        d["t"] = k.t;
        d["u"] = k.u;
        d["branch"] = std::string(to_string(k.branch));
        d["branch_scalar"] = k.branch_scalar;
        return d;
      },
      py::arg("cls"), py::arg("a"), py::arg("mode") = "corrected");
  m.def(
      "closed_form_exp",
      [](const std::string& cls, const Mat3& a, const std::string& mode) {
        return closed_form_exp(a, table1_coefficients(parse_basic_class(cls), a, parse_mode(mode)));
      },
      py::arg("cls"), py::arg("a"), py::arg("mode") = "corrected", "E + tA + uA^2");
  m.def("reference_expm", &reference_expm, py::arg("a"));
  m.def(
      "spectral_exp",
      [](const Mat3& a) {
        const SpectralExp s = spectral_exp(a);
        return std::make_pair(s.value, std::string(to_string(s.path)));
      },
      py::arg("a"));

  m.def("rodrigues", &rodrigues, py::arg("axis"), py::arg("angle"));
  m.def(
      "example_algebra",
      [](const std::string& name, std::optional<std::string> variant) {
        std::optional<HeisenbergVariant> v;
        if (variant) v = parse_variant(*variant);
        const ExampleRecord r = example_algebra(parse_example(name), v);
        py::dict d;
        d["c"] = flat_of(r.constants);
        d["claimed"] = signature_list(r.claimed);
        d["computed"] = signature_list(r.computed);
        d["assertable"] = r.claim_is_assertable;
        d["substitution"] = r.substitution;
        d["bianchi"] = r.bianchi_label;
        return d;
      },
      py::arg("name"), py::arg("variant") = py::none());
  m.def("example_group_element",
        [](const std::string& name, double x, double y, double z) {
          return example_group_element(parse_example(name), x, y, z);
        },
        py::arg("name"), py::arg("x"), py::arg("y"), py::arg("z"));

  m.def(
      "parse_algebra_json",
      [](const std::string& text) { return flat_of(cli::parse_algebra_json(text).constants); },
      py::arg("text"));
  m.def(
      "dump_algebra",
      [](const std::vector<double>& c, std::optional<std::string> name) {
        cli::AlgebraFile f;
        f.constants = constants_from(c);
        f.name = name;
        return cli::dump_algebra(f);
      },
      py::arg("c"), py::arg("name") = py::none());

  m.def(
      "verify_report",
      [](std::size_t samples, std::uint64_t seed, double tol, unsigned workers) {
        SweepConfig cfg;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.tolerance = tol;
        cfg.workers = workers;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_verification(cfg);
        }
        return cli::dump_report(r);
      },
      py::arg("samples") = 1000, py::arg("seed") = 42, py::arg("tol") = 1e-10, py::arg("workers") = 0,
      "the verification report as a JSON string");
}
