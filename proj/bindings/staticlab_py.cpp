#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "staticlab/catalog.hpp"
#include "staticlab/curvature.hpp"
#include "staticlab/levelset.hpp"
#include "staticlab/model_io.hpp"
#include "staticlab/quadrature.hpp"
#include "staticlab/warp_ode.hpp"

namespace py = pybind11;
using namespace staticlab;

namespace {

py::list tensor_to_list(const TensorValue& t) {
    const int n = t.dim();
    std::function<py::list(int, std::vector<int>&)> rec = [&](int depth,
                                                              std::vector<int>& idx) {
        py::list out;
        for (int i = 0; i < n; ++i) {
            idx.push_back(i);
            if (depth + 1 == t.rank()) {
                switch (t.rank()) {
                    case 1: out.append(t(idx[0])); break;
                    case 2: out.append(t(idx[0], idx[1])); break;
                    case 3: out.append(t(idx[0], idx[1], idx[2])); break;
                    default: out.append(t(idx[0], idx[1], idx[2], idx[3]));
                }
            } else {
                out.append(rec(depth + 1, idx));
            }
            idx.pop_back();
        }
        return out;
    };
    std::vector<int> idx;
    return rec(0, idx);
}

py::list matrix_to_list(const Matrix& m) {
    py::list out;
    for (int i = 0; i < m.size(); ++i) {
        py::list row;
        for (int j = 0; j < m.size(); ++j) row.append(m(i, j));
        out.append(row);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_staticlab, m) {
    m.doc() = "curvature pipelines, static/CPE metrics and their identities";

    py::class_<StaticModel>(m, "Model")
        .def_property_readonly("name", [](const StaticModel& s) { return s.name; })
        .def_property_readonly("dim", &StaticModel::dim)
        .def_property_readonly("kind", [](const StaticModel& s) { return to_string(s.kind); })
        .def_property_readonly("closed", [](const StaticModel& s) { return s.closed; })
        .def("f", [](const StaticModel& s, const Point& x) { return s.f(x); })
        .def("__repr__", [](const StaticModel& s) {
            return "<staticlab.Model '" + s.name + "' n=" + std::to_string(s.dim()) + ">";
        });

    m.def("model_names", &model_names);
    m.def("build_model", &build_model, py::arg("name"));
    m.def("load_model", &load_model_file, py::arg("path"));
    m.def("save_model", &save_model_file, py::arg("model"), py::arg("path"));

    m.def("scalar_curvature", [](const StaticModel& s, const Point& x) {
        return curvature_at(s.metric, x).scalar;
    });
    m.def("ricci", [](const StaticModel& s, const Point& x) {
        return matrix_to_list(curvature_at(s.metric, x).ricci);
    });
    m.def("schouten", [](const StaticModel& s, const Point& x) {
        return matrix_to_list(curvature_at(s.metric, x).schouten);
    });
    m.def("riemann", [](const StaticModel& s, const Point& x) {
        return tensor_to_list(curvature_at(s.metric, x).riemann);
    });
    m.def("weyl", [](const StaticModel& s, const Point& x) {
        return tensor_to_list(curvature_at(s.metric, x).weyl);
    });
    m.def("cotton", [](const StaticModel& s, const Point& x) {
        return tensor_to_list(cotton(s.metric, x));
    });
    m.def("bach", [](const StaticModel& s, const Point& x) {
        return tensor_to_list(bach(s.metric, x));
    });
    m.def("d_tensor", [](const StaticModel& s, const Point& x) {
        return tensor_to_list(d_tensor(s.metric, s.f, x));
    });
    m.def("weyl_divergence_residual", [](const StaticModel& s, const Point& x) {
        return weyl_divergence_residual(s.metric, x);
    });

    m.def("vacuum_static_residual", [](const StaticModel& s, const Point& x) {
        return vacuum_static_residual(s.metric, s.f, x).max_abs();
    });
    m.def("static_residual", [](const StaticModel& s, const Point& x) {
        return static_residual(s.metric, s.f, x).max_abs();
    });
    m.def("cpe_residual", [](const StaticModel& s, const Point& x) {
        return cpe_residual(s.metric, s.f, x).max_abs();
    });
    m.def("unified_residual", [](const StaticModel& s, const Point& x) {
        return unified_residual(s, x).max_abs();
    });
    m.def("d_two_routes_difference", [](const StaticModel& s, const Point& x) {
        return d_closed_form(s, x).max_diff;
    });
    m.def("bach_rewrite_residual", [](const StaticModel& s, const Point& x) {
        return bach_rewrite_residual(s, x);
    });

    m.def("slice_geometry", [](const StaticModel& s, double c) {
        SliceData sd = slice_geometry(s, c);
        py::dict d;
        d["s"] = sd.s_value;
        d["W"] = sd.W;
        d["H"] = sd.H;
        d["A2"] = sd.A2;
        d["umbilic_dev2"] = sd.umbilic_dev2;
        d["grad_sigma_W2"] = sd.grad_sigma_W2;
        d["slice_scalar"] = sd.slice_scalar;
        d["ricci_nn"] = sd.ricci_nn;
        return d;
    });
    m.def("levelset_identity", [](const StaticModel& s, double c) {
        LevelsetIdentity li = levelset_identity(s, c);
        return py::make_tuple(li.lhs, li.rhs, li.residual);
    });

    m.def(
        "check_main_identity",
        [](const StaticModel& s, double c1, double c2, int p, int nodes) {
            IdentityCheck ic = check_main_identity(s, c1, c2, p, nodes);
            py::dict d;
            d["lhs"] = ic.lhs;
            d["rhs"] = ic.rhs;
            d["residual"] = ic.residual;
            d["tolerance"] = ic.tolerance;
            d["pass"] = ic.pass;
            d["converged"] = ic.converged;
            return d;
        },
        py::arg("model"), py::arg("c1"), py::arg("c2"), py::arg("p") = 2,
        py::arg("nodes") = 48);

    m.def(
        "find_periodic_warp",
        [](int n, double R, double a, double amplitude) {
            PeriodicWarp pw = find_periodic_warp(n, R, a, amplitude);
            py::dict d;
            d["found"] = pw.found;
            d["diagnostic"] = pw.diagnostic;
            d["period"] = pw.period;
            d["k"] = pw.k;
            d["closure_error"] = pw.closure_error;
            return d;
        },
        py::arg("n"), py::arg("R"), py::arg("a"), py::arg("amplitude") = 1.25);

    m.def("certify_catalog", [] {
        py::list out;
        for (const auto& e : catalog()) {
            CatalogCertification c = certify_entry(e);
            py::dict d;
            d["name"] = c.name;
            d["vacuum_residual"] = c.vacuum_residual;
            d["max_bach"] = c.max_bach;
            d["max_d"] = c.max_d;
            d["pass"] = c.pass;
            out.append(d);
        }
        return out;
    });
}
