#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "whelix/commands.hpp"

namespace py = pybind11;
using namespace whelix;

namespace {

Json to_cjson(const py::object& obj) {
    py::object dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(obj).cast<std::string>());
}

py::object to_py(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(py::str(j.dump()));
}

VarietyModel variety_of(const py::object& v) {
    return VarietyModel::from_json(to_cjson(v));
}

MultiDegree degree_of(const VarietyModel& X, const std::vector<long long>& d) {
    MultiDegree m{d};
    X.check_degree(m);
    return m;
}

FormalBundle bundle_of(const VarietyModel& X, const py::object& b) {
    return bundle_from_json(X, to_cjson(b));
}

std::vector<FormalBundle> bundles_of(const VarietyModel& X,
                                     const py::list& members) {
    std::vector<FormalBundle> out;
    for (const auto& m : members)
        out.push_back(bundle_of(X, py::reinterpret_borrow<py::object>(m)));
    return out;
}

HelixSpec helix_of(const py::object& variety, const py::list& thread, int d) {
    VarietyModel X = variety_of(variety);
    return HelixSpec(X, bundles_of(X, thread), d);
}

GaloisModel galois_of(const VarietyModel& X, const py::dict& labels,
                      const std::vector<std::vector<std::string>>& generators) {
    std::map<std::string, Summand> summands;
    for (const auto& item : labels) {
        std::string name = py::cast<std::string>(item.first);
        std::vector<long long> d =
            py::cast<std::vector<long long>>(item.second);
        summands.emplace(name,
                         Summand(degree_of(X, d), BrauerClass::zero()));
    }
    return GaloisModel(X, std::move(summands), generators);
}

py::dict report_of(bool passed, const Json& details) {
    py::dict out;
    out["passed"] = passed;
    out["details"] = to_py(details);
    return out;
}

py::dict verdict_of(const DescentVerdict& v) {
    py::dict out;
    out["status"] = to_string(v.status);
    out["report"] = to_py(v.report);
    return out;
}

}  // namespace

PYBIND11_MODULE(whelix, m) {
    m.doc() =
        "Exact checks for exceptional collections, helices and Galois "
        "descent on products of (possibly twisted) projective spaces over "
        "the rationals.";

    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<undetermined_error>(m, "UndeterminedError");

    // --- division-algebra arithmetic ---
    m.def(
        "hilbert_symbol",
        [](const std::string& a, const std::string& b, const std::string& v) {
            return hilbert_symbol(parse_rational(a), parse_rational(b),
                                  Place::from_string(v));
        },
        py::arg("a"), py::arg("b"), py::arg("place"),
        "Hilbert symbol (a, b)_v in {+1, -1}; place is a prime or \"inf\".");
    m.def(
        "quaternion_class",
        [](const std::string& a, const std::string& b) {
            return to_py(BrauerClass::from_quaternion(
                             QuaternionSymbol(parse_rational(a),
                                              parse_rational(b)))
                             .to_json());
        },
        py::arg("a"), py::arg("b"),
        "Local-invariant description of the quaternion algebra (a, b).");
    m.def("brauer_tensor", [](const py::object& j1, const py::object& j2) {
        return to_py(BrauerClass::from_json(to_cjson(j1))
                         .tensor(BrauerClass::from_json(to_cjson(j2)))
                         .to_json());
    });
    m.def("brauer_power", [](const py::object& j, long long e) {
        return to_py(BrauerClass::from_json(to_cjson(j)).power(e).to_json());
    });
    m.def("brauer_period", [](const py::object& j) {
        return BrauerClass::from_json(to_cjson(j)).period();
    });
    m.def("brauer_index", [](const py::object& j) {
        return BrauerClass::from_json(to_cjson(j)).index();
    });
    m.def("brauer_is_split", [](const py::object& j) {
        return BrauerClass::from_json(to_cjson(j)).is_split();
    });

    // --- cohomology on the split form ---
    m.def("cohomology_dims",
          [](const py::object& v, const std::vector<long long>& d) {
              VarietyModel X = variety_of(v);
              return cohomology_dims(X, degree_of(X, d));
          });
    m.def("euler_char", [](const py::object& v,
                           const std::vector<long long>& d) {
        VarietyModel X = variety_of(v);
        return euler_char(X, degree_of(X, d));
    });
    m.def("hom_basis",
          [](const py::object& v, const std::vector<long long>& d) {
              VarietyModel X = variety_of(v);
              std::vector<std::string> out;
              for (const Monomial& mono :
                   hom_monomial_basis(X, degree_of(X, d)))
                  out.push_back(mono.str());
              return out;
          });

    // --- bundles ---
    m.def("as_bundle", [](const py::object& v,
                          const std::vector<long long>& d) {
        VarietyModel X = variety_of(v);
        return to_py(bundle_to_json(as_bundle(X, degree_of(X, d))));
    });
    m.def("box_product", [](const py::object& v,
                            const std::vector<long long>& d) {
        VarietyModel X = variety_of(v);
        return to_py(bundle_to_json(box_product(X, degree_of(X, d))));
    });
    m.def("dual", [](const py::object& v, const py::object& b) {
        VarietyModel X = variety_of(v);
        return to_py(bundle_to_json(bundle_of(X, b).dual()));
    });
    m.def("twist", [](const py::object& v, const py::object& b,
                      const std::vector<long long>& d) {
        VarietyModel X = variety_of(v);
        return to_py(bundle_to_json(
            twist_by(X, bundle_of(X, b), degree_of(X, d))));
    });
    m.def("ext_dims", [](const py::object& v, const py::object& e,
                         const py::object& f) {
        VarietyModel X = variety_of(v);
        return ext_dims(X, bundle_of(X, e), bundle_of(X, f));
    });
    m.def("end_algebra", [](const py::object& v, const py::object& b) {
        VarietyModel X = variety_of(v);
        return to_py(end_algebra(X, bundle_of(X, b)).to_json());
    });
    m.def("classify", [](const py::object& v, const py::object& b) {
        VarietyModel X = variety_of(v);
        return to_string(classify_exceptionality(X, bundle_of(X, b)));
    });
    m.def("is_rigid", [](const py::object& v, const py::object& b) {
        VarietyModel X = variety_of(v);
        return is_rigid(X, bundle_of(X, b));
    });
    m.def("check_block", [](const py::object& v, const py::list& members) {
        VarietyModel X = variety_of(v);
        return to_py(check_split_semisimple_block(X, bundles_of(X, members))
                         .to_json());
    });
    m.def(
        "check_collection",
        [](const py::object& v, const py::list& members, bool strong,
           bool full, const std::string& strictness) {
            VarietyModel X = variety_of(v);
            CollectionOptions opts;
            opts.require_strong = strong;
            opts.require_full = full;
            opts.strictness = strictness_from_string(strictness);
            CheckReport r = check_collection(X, bundles_of(X, members), opts);
            return report_of(r.passed, r.details);
        },
        py::arg("variety"), py::arg("members"), py::arg("strong") = false,
        py::arg("full") = false, py::arg("strictness") = "weak");

    // --- helices ---
    m.def(
        "verify_whelix",
        [](const py::object& v, const py::list& thread, int d,
           long long window, const std::string& strictness) {
            CheckReport r = verify_whelix(helix_of(v, thread, d), window,
                                          strictness_from_string(strictness));
            return report_of(r.passed, r.details);
        },
        py::arg("variety"), py::arg("thread"), py::arg("d"),
        py::arg("window"), py::arg("strictness") = "weak");
    m.def("verify_geometric",
          [](const py::object& v, const py::list& thread, int d,
             long long window) {
              CheckReport r = verify_geometric(helix_of(v, thread, d), window);
              return report_of(r.passed, r.details);
          });
    m.def("helix_extend", [](const py::object& v, const py::list& thread,
                             int d, long long i) {
        return to_py(bundle_to_json(extend(helix_of(v, thread, d), i)));
    });
    m.def("helix_hom_dim", [](const py::object& v, const py::list& thread,
                              int d, long long i, long long j) {
        return helix_hom_dim(helix_of(v, thread, d), i, j);
    });
    m.def("arrow_count", [](const py::object& v, const py::list& thread,
                            int d, long long i, long long j) {
        return arrow_count(helix_of(v, thread, d), i, j);
    });
    m.def("quiver", [](const py::object& v, const py::list& thread, int d,
                       long long window) {
        QuiverDescription q = rolled_up_quiver(helix_of(v, thread, d), window);
        py::dict out;
        out["quiver"] = to_py(q.to_json());
        out["dot"] = q.to_dot();
        return out;
    });
    m.def(
        "check_tilting",
        [](const py::object& v, const py::list& thread, int d,
           long long thread_index, long long L) {
            CheckReport r = check_tilting_hypothesis(helix_of(v, thread, d),
                                                     thread_index, L);
            return report_of(r.passed, r.details);
        },
        py::arg("variety"), py::arg("thread"), py::arg("d"),
        py::arg("thread_index") = 1, py::arg("L") = 10);

    // --- Galois descent ---
    m.def("orbits", [](const py::object& v, const py::dict& labels,
                       const std::vector<std::vector<std::string>>& gens) {
        VarietyModel X = variety_of(v);
        return galois_of(X, labels, gens).orbits();
    });
    m.def(
        "check_descent_blocks",
        [](const py::object& v, const py::object& bundle,
           const py::dict& labels,
           const std::vector<std::vector<std::string>>& gens,
           const std::map<std::string, long long>& multiplicities) {
            VarietyModel X = variety_of(v);
            return verdict_of(check_descent_blocks(X, bundle_of(X, bundle),
                                                   galois_of(X, labels, gens),
                                                   multiplicities));
        },
        py::arg("variety"), py::arg("bundle"), py::arg("labels"),
        py::arg("generators") = std::vector<std::vector<std::string>>{},
        py::arg("multiplicities") = std::map<std::string, long long>{});
    m.def(
        "check_block_inclusion",
        [](const py::object& v, const py::object& bundle,
           const py::dict& labels,
           const std::vector<std::vector<std::string>>& gens,
           const std::vector<std::vector<std::string>>& blocks) {
            VarietyModel X = variety_of(v);
            return verdict_of(check_block_inclusion(X, bundle_of(X, bundle),
                                                    galois_of(X, labels, gens),
                                                    blocks));
        },
        py::arg("variety"), py::arg("bundle"), py::arg("labels"),
        py::arg("generators"), py::arg("blocks"));
    m.def(
        "check_singleton_decomposition",
        [](const py::object& v, const py::object& bundle,
           const py::dict& labels,
           const std::vector<std::vector<std::string>>& gens) {
            VarietyModel X = variety_of(v);
            return verdict_of(check_singleton_orbit_decomposition(
                X, bundle_of(X, bundle), galois_of(X, labels, gens)));
        },
        py::arg("variety"), py::arg("bundle"), py::arg("labels"),
        py::arg("generators") = std::vector<std::vector<std::string>>{});
    m.def("decompose_as_bundle", [](const py::object& v,
                                    const py::object& bundle) {
        VarietyModel X = variety_of(v);
        AsDecomposition d = decompose_as_bundle(X, bundle_of(X, bundle));
        py::dict out;
        out["ok"] = d.ok;
        out["parts"] = py::cast(d.parts);
        out["report"] = to_py(d.report);
        return out;
    });

    // --- scenes ---
    m.def("load_scene", [](const std::string& path) {
        Scene s = Scene::from_file(path);
        py::dict out;
        out["variety"] = to_py(s.variety.to_json());
        py::dict bundles;
        for (const auto& [name, bundle] : s.bundles)
            bundles[py::str(name)] = to_py(bundle_to_json(bundle));
        out["bundles"] = bundles;
        out["collection"] = py::cast(s.collection);
        return out;
    });
}
