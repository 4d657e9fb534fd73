// Python bindings for the sketch core: construction, inserts, unions, the
// estimators, the collision model, and byte-level serialization.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hyperminhash/collision.hpp"
#include "hyperminhash/errors.hpp"
#include "hyperminhash/estimators.hpp"
#include "hyperminhash/hash.hpp"
#include "hyperminhash/serialize.hpp"
#include "hyperminhash/sketch.hpp"

namespace py = pybind11;
using namespace hmh;

namespace {

std::string_view view_of(const py::buffer_info& info) {
    return std::string_view(static_cast<const char*>(info.ptr),
                            static_cast<size_t>(info.size) *
                                static_cast<size_t>(info.itemsize));
}

}  // namespace

PYBIND11_MODULE(_hyperminhash, m) {
    m.doc() = "HyperMinHash sketches: streaming cardinality and set similarity";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<IncompatibleParamsError>(m, "IncompatibleParamsError",
                                                    PyExc_ValueError);
    py::register_exception<EmptySketchError>(m, "EmptySketchError", PyExc_ValueError);
    py::register_exception<SaturatedSketchError>(m, "SaturatedSketchError",
                                                 PyExc_OverflowError);
    py::register_exception<CardinalityRangeError>(m, "CardinalityRangeError",
                                                  PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<Correction>(m, "Correction")
        .value("none", Correction::none)
        .value("exact", Correction::exact)
        .value("approximate", Correction::approximate);

    py::class_<SketchParams>(m, "SketchParams")
        .def(py::init([](uint32_t p, uint32_t q, uint32_t r, uint64_t seed) {
                 return make_params(p, q, r, seed);
             }),
             py::arg("p") = 12, py::arg("q") = 6, py::arg("r") = 10,
             py::arg("seed") = 0)
        .def_readonly("p", &SketchParams::p)
        .def_readonly("q", &SketchParams::q)
        .def_readonly("r", &SketchParams::r)
        .def_readonly("seed", &SketchParams::seed)
        .def_readonly("hash_id", &SketchParams::hash_id)
        .def_property_readonly("bucket_count", &SketchParams::bucket_count)
        .def(py::self == py::self)
        .def("__repr__", [](const SketchParams& p) {
            return "SketchParams(p=" + std::to_string(p.p) + ", q=" +
                   std::to_string(p.q) + ", r=" + std::to_string(p.r) + ", seed=" +
                   std::to_string(p.seed) + ")";
        });

    py::class_<JaccardResult>(m, "JaccardResult")
        .def_readonly("estimate", &JaccardResult::estimate)
        .def_readonly("matched", &JaccardResult::matched)
        .def_readonly("occupied", &JaccardResult::occupied)
        .def_readonly("correction", &JaccardResult::correction)
        .def_readonly("method", &JaccardResult::method)
        .def("__repr__", [](const JaccardResult& r) {
            return "JaccardResult(estimate=" + std::to_string(r.estimate) +
                   ", matched=" + std::to_string(r.matched) + ", occupied=" +
                   std::to_string(r.occupied) + ", correction=" +
                   std::to_string(r.correction) + ")";
        });

    py::class_<HmhSketch>(m, "Sketch")
        .def(py::init<const SketchParams&>(), py::arg("params"))
        .def(py::init([](uint32_t p, uint32_t q, uint32_t r, uint64_t seed) {
                 return HmhSketch(make_params(p, q, r, seed));
             }),
             py::arg("p") = 12, py::arg("q") = 6, py::arg("r") = 10,
             py::arg("seed") = 0)
        .def_property_readonly("params", &HmhSketch::params)
        .def_property_readonly("bucket_count", &HmhSketch::bucket_count)
        .def("insert",
             [](HmhSketch& s, const py::buffer& item) {
                 s.insert(view_of(item.request()));
             },
             py::arg("item"), "Insert an item given as bytes-like data.")
        .def("insert",
             [](HmhSketch& s, std::string_view item) { s.insert(item); },
             py::arg("item"), "Insert a string item (hashed as UTF-8 bytes).")
        .def("update",
             [](HmhSketch& s, py::iterable items) {
                 for (py::handle h : items) {
                     if (py::isinstance<py::str>(h)) {
                         s.insert(h.cast<std::string_view>());
                     } else {
                         s.insert(view_of(h.cast<py::buffer>().request()));
                     }
                 }
             },
             py::arg("items"), "Insert every item of an iterable.")
        .def("merge", &HmhSketch::merge, py::arg("other"),
             "Fold another sketch into this one (lossless union).")
        .def("cardinality",
             [](const HmhSketch& s) { return estimate_cardinality(s); })
        .def("to_bytes",
             [](const HmhSketch& s) {
                 const std::vector<uint8_t> bytes = serialize(s);
                 return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                                  bytes.size());
             })
        .def_static("from_bytes",
                    [](const py::bytes& data) {
                        std::string_view view = data;
                        return deserialize(std::span<const uint8_t>(
                            reinterpret_cast<const uint8_t*>(view.data()),
                            view.size()));
                    },
                    py::arg("data"))
        .def(py::self == py::self);

    m.def("union_of", [](const HmhSketch& a, const HmhSketch& b) {
        return union_of(a, b);
    });
    m.def("estimate_cardinality", &estimate_cardinality, py::arg("sketch"));
    m.def("jaccard", &jaccard, py::arg("a"), py::arg("b"),
          py::arg("correction") = Correction::none);
    m.def("intersection", &intersection, py::arg("a"), py::arg("b"),
          py::arg("correction") = Correction::none);

    m.def("expected_collisions_exact", &expected_collisions_exact, py::arg("n"),
          py::arg("m"), py::arg("params"));
    m.def("expected_collisions_approx", &expected_collisions_approx, py::arg("n"),
          py::arg("m"), py::arg("params"));
    m.def("collision_bound", &collision_bound, py::arg("n"), py::arg("params"));
    m.def("gamma_bound", &gamma_bound, py::arg("n"), py::arg("q"), py::arg("r"));
    m.def("variance_bound", &variance_bound, py::arg("expected"));
    m.def("recommend_params", &recommend_params, py::arg("epsilon"),
          py::arg("t_min"), py::arg("n_max"));

    m.def(
        "derive_words",
        [](const py::buffer& item, uint64_t seed) {
            const HashWords w = derive_words(view_of(item.request()), seed);
            return py::make_tuple(w.bucket_word, w.exponent_word, w.mantissa_word);
        },
        py::arg("item"), py::arg("seed") = 0,
        "Expand bytes-like data into the (bucket, exponent, mantissa) hash words.");
    m.def(
        "derive_words",
        [](std::string_view item, uint64_t seed) {
            const HashWords w = derive_words(item, seed);
            return py::make_tuple(w.bucket_word, w.exponent_word, w.mantissa_word);
        },
        py::arg("item"), py::arg("seed") = 0,
        "Expand a string item into the (bucket, exponent, mantissa) hash words.");
}
