// Copyright 2026 The riprism Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "cli/run_cli.h"
#include "riprism/chart_export.h"
#include "riprism/chart_ops.h"
#include "riprism/corpus.h"
#include "riprism/dep_analysis.h"
#include "riprism/dump_io.h"
#include "riprism/error.h"
#include "riprism/meaning.h"
#include "riprism/metrics.h"
#include "riprism/mock_backend.h"
#include "riprism/parse_timeline.h"
#include "riprism/session.h"
#include "riprism/state_prism.h"
#include "riprism/stimulus.h"
#include "riprism/tri_chart.h"

namespace py = pybind11;

namespace riprism {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

class PyBackend : public Backend {
 public:
  using Backend::Backend;
  BackendResult run(std::span<const std::string> prefix) override {
    py::gil_scoped_acquire gil;
    const std::vector<std::string> tokens(prefix.begin(), prefix.end());
    py::function override = py::get_override(static_cast<const Backend*>(this), "run");
    if (!override) throw BackendError("Backend subclass does not implement run()");
    return override(tokens).cast<BackendResult>();
  }
};

// n x n array, NaN above the diagonal and in missing cells.
Array chart_to_numpy(const TriChart& chart) {
  const auto n = static_cast<py::ssize_t>(chart.n_tokens());
  Array out({n, n});
  auto v = out.mutable_unchecked<2>();
  for (py::ssize_t r = 0; r < n; ++r) {
    for (py::ssize_t c = 0; c < n; ++c) {
      v(r, c) = c <= r ? chart.at(r + 1, c + 1) : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

TriChart chart_from_numpy(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw InvalidArgument("chart array must be square");
  }
  const auto v = a.unchecked<2>();
  TriChart chart(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t r = 0; r < a.shape(0); ++r) {
    for (py::ssize_t c = 0; c <= r; ++c) {
      if (!std::isnan(v(r, c))) chart.set(r + 1, c + 1, v(r, c));
    }
  }
  return chart;
}

std::vector<double> to_vector(const Array& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace
}  // namespace riprism

PYBIND11_MODULE(_core, m) {
  using namespace riprism;
  m.doc() = "Restart-incremental state and parse analysis";

  py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<BackendError>(m, "BackendError", PyExc_RuntimeError);

  m.attr("LN2") = kLn2;
  m.attr("DEFAULT_SHIFT_THRESHOLD") = kDefaultShiftThreshold;

  // --- enums -------------------------------------------------------------
  py::enum_<DiagonalFill>(m, "DiagonalFill")
      .value("COMPUTED", DiagonalFill::kComputed)
      .value("ZERO_FILLED", DiagonalFill::kZeroFilled);
  py::enum_<MetricKind>(m, "MetricKind")
      .value("COSINE", MetricKind::kCosine)
      .value("JSD", MetricKind::kJsd)
      .value("ENTROPY_DELTA", MetricKind::kEntropyDelta)
      .value("ENTROPY_DELTA_SIGNED", MetricKind::kEntropyDeltaSigned);
  py::enum_<Reference>(m, "Reference")
      .value("FIRST", Reference::kFirst)
      .value("PREVIOUS", Reference::kPrevious)
      .value("FINAL", Reference::kFinal);
  py::enum_<StimulusKind>(m, "StimulusKind")
      .value("NNC", StimulusKind::kNNC)
      .value("NPS", StimulusKind::kNPS)
      .value("MVRR", StimulusKind::kMVRR);
  py::enum_<EditTarget>(m, "EditTarget")
      .value("ARC", EditTarget::kArc)
      .value("LABEL", EditTarget::kLabel);
  py::enum_<Aggregation>(m, "Aggregation")
      .value("POOLED", Aggregation::kPooled)
      .value("PER_ITEM", Aggregation::kPerItem);
  py::enum_<Table1Mode>(m, "Table1Mode")
      .value("MEANING", Table1Mode::kMeaning)
      .value("DEPENDENCY", Table1Mode::kDependency);
  py::enum_<MockMode>(m, "MockMode")
      .value("CAUSAL", MockMode::kCausal)
      .value("BIDIRECTIONAL", MockMode::kBidirectional);

  // --- charts ------------------------------------------------------------
  py::class_<TriChart>(m, "TriChart")
      .def(py::init<std::size_t>(), py::arg("n_tokens"))
      .def_property_readonly("n_tokens", &TriChart::n_tokens)
      .def_property("fill_policy", &TriChart::fill_policy, &TriChart::set_fill_policy)
      .def("__getitem__",
           [](const TriChart& c, std::pair<std::size_t, std::size_t> ti) {
             return c.at(ti.first, ti.second);
           })
      .def("__setitem__",
           [](TriChart& c, std::pair<std::size_t, std::size_t> ti, double v) {
             c.set(ti.first, ti.second, v);
           })
      .def("is_missing", &TriChart::is_missing, py::arg("t"), py::arg("i"))
      .def("to_numpy", &chart_to_numpy)
      .def_static("from_numpy", &chart_from_numpy, py::arg("array"))
      .def("__eq__", [](const TriChart& a, const TriChart& b) { return same_cells(a, b); });

  py::class_<MaskChart>(m, "MaskChart")
      .def(py::init<std::size_t, bool>(), py::arg("n_tokens"), py::arg("fill") = false)
      .def_property_readonly("n_tokens", &MaskChart::n_tokens)
      .def("__getitem__",
           [](const MaskChart& c, std::pair<std::size_t, std::size_t> ti) {
             return c.at(ti.first, ti.second);
           })
      .def("__setitem__",
           [](MaskChart& c, std::pair<std::size_t, std::size_t> ti, bool v) {
             c.set(ti.first, ti.second, v);
           })
      .def("count", [](const MaskChart& c) {
        std::size_t k = 0;
        for (bool b : c.cells()) k += b;
        return k;
      });

  // --- prisms and timelines ------------------------------------------------
  py::class_<PrismShape>(m, "PrismShape")
      .def_static("fixed", &PrismShape::fixed, py::arg("dim"))
      .def_static("prefix_sized", &PrismShape::prefix_sized, py::arg("root_slot"))
      .def("width", &PrismShape::width, py::arg("t"))
      .def_readonly("dim", &PrismShape::dim)
      .def_readonly("root_slot", &PrismShape::root_slot)
      .def_property_readonly("prefix_sized",
                             [](const PrismShape& s) { return s.kind == DimKind::kPrefixSized; })
      .def("__eq__", [](const PrismShape& a, const PrismShape& b) { return a == b; });

  py::class_<StatePrism>(m, "StatePrism")
      .def(py::init<std::size_t, PrismShape>(), py::arg("layers"), py::arg("shape"))
      .def_property_readonly("layers", &StatePrism::layers)
      .def_property_readonly("shape", &StatePrism::shape)
      .def_property_readonly("rows", &StatePrism::rows)
      .def_property_readonly("n_tokens", &StatePrism::n_tokens)
      .def("append_timestep",
           [](StatePrism& p, const Array& block) { p.append_timestep(to_vector(block)); },
           py::arg("block"), "Block laid out as [layer][position][component].")
      .def(
          "vector",
          [](const StatePrism& p, std::size_t layer, std::size_t t, std::size_t i) {
            const auto v = p.vector(layer, t, i);
            return Array(static_cast<py::ssize_t>(v.size()), v.data());
          },
          py::arg("layer"), py::arg("t"), py::arg("i"))
      .def("__eq__", [](const StatePrism& a, const StatePrism& b) { return a == b; });
  m.def("delete_prism_token", static_cast<StatePrism (*)(const StatePrism&, std::size_t)>(&delete_token),
        py::arg("prism"), py::arg("position"));

  py::class_<ParseTimeline>(m, "ParseTimeline")
      .def(py::init<std::size_t>(), py::arg("label_count"))
      .def_property_readonly("label_count", &ParseTimeline::label_count)
      .def_property_readonly("n_tokens", &ParseTimeline::n_tokens)
      .def(
          "append_timestep",
          [](ParseTimeline& tl, std::vector<std::uint32_t> heads,
             std::vector<std::uint32_t> labels, const Array& attn) {
            tl.append_timestep(std::move(heads), std::move(labels), to_vector(attn));
          },
          py::arg("heads"), py::arg("labels"), py::arg("label_attn"))
      .def("head", &ParseTimeline::head, py::arg("t"), py::arg("i"))
      .def("label", &ParseTimeline::label, py::arg("t"), py::arg("i"))
      .def(
          "label_attn",
          [](const ParseTimeline& tl, std::size_t t, std::size_t i, std::size_t j) {
            const auto v = tl.label_attn(t, i, j);
            return std::vector<double>(v.begin(), v.end());
          },
          py::arg("t"), py::arg("i"), py::arg("j"))
      .def("__eq__", [](const ParseTimeline& a, const ParseTimeline& b) { return a == b; });

  // --- metrics -------------------------------------------------------------
  m.def("cosine_distance",
        [](const Array& u, const Array& v) { return cosine_distance(to_vector(u), to_vector(v)); },
        py::arg("u"), py::arg("v"));
  m.def("jsd", [](const Array& p, const Array& q) { return jsd(to_vector(p), to_vector(q)); },
        py::arg("p"), py::arg("q"));
  m.def("entropy", [](const Array& p) { return entropy(to_vector(p)); }, py::arg("p"));
  m.def("uniform", &uniform, py::arg("categories"));

  // --- chart operations ----------------------------------------------------
  m.def("build_chart", &build_chart, py::arg("prism"), py::arg("layer"), py::arg("metric"),
        py::arg("reference"));
  m.def("delete_token", &delete_token<double>, py::arg("chart"), py::arg("position"));
  m.def("trim_to_anchor", &trim_to_anchor<double>, py::arg("chart"), py::arg("anchor"));
  m.def("realign_pair", &realign_pair<double>, py::arg("stimulus"), py::arg("baseline"),
        py::arg("pair"));
  m.def("abs_diff", &abs_diff, py::arg("a"), py::arg("b"));
  m.def("mean_charts", [](const std::vector<TriChart>& c) { return mean_charts(c); },
        py::arg("charts"));
  m.def("subdiagonal_means", &subdiagonal_means, py::arg("chart"), py::arg("k_max"));
  m.def("pooled_subdiagonal_means",
        [](const std::vector<TriChart>& c, std::size_t k) { return pooled_subdiagonal_means(c, k); },
        py::arg("charts"), py::arg("k_max"));

  // --- dependency analysis -------------------------------------------------
  m.def("label_jsd", &label_jsd, py::arg("timeline"), py::arg("i"), py::arg("t_from"),
        py::arg("t_to"));
  m.def("jsd_chart", &jsd_chart, py::arg("timeline"), py::arg("reference"));
  m.def("detect_edits", &detect_edits, py::arg("timeline"), py::arg("target"));
  m.def("detect_shifts", &detect_shifts, py::arg("chart"),
        py::arg("tau") = kDefaultShiftThreshold);
  py::class_<ConfusionCounts>(m, "ConfusionCounts")
      .def(py::init<>())
      .def_readwrite("tp", &ConfusionCounts::tp)
      .def_readwrite("tn", &ConfusionCounts::tn)
      .def_readwrite("fp", &ConfusionCounts::fp)
      .def_readwrite("fn", &ConfusionCounts::fn);
  m.def("confusion", &confusion, py::arg("pred"), py::arg("truth"));
  m.def("mcc", py::overload_cast<const ConfusionCounts&>(&mcc), py::arg("counts"));
  m.def("mcc_charts", py::overload_cast<const MaskChart&, const MaskChart&>(&mcc),
        py::arg("pred"), py::arg("truth"));
  m.def(
      "average_precision",
      [](const std::vector<double>& scores, const std::vector<bool>& positive) {
        if (scores.size() != positive.size()) {
          throw InvalidArgument("scores and labels differ in length");
        }
        std::vector<RankedCell> cells;
        for (std::size_t k = 0; k < scores.size(); ++k) {
          cells.push_back({scores[k], positive[k], k + 1, 0});
        }
        return average_precision(cells);
      },
      py::arg("scores"), py::arg("positive"),
      "Scores ranked in descending order; ties keep input order.");
  m.def("average_precision_chart",
        py::overload_cast<const TriChart&, const MaskChart&>(&average_precision),
        py::arg("scores"), py::arg("truth"));
  m.def("edit_ratio", &edit_ratio, py::arg("truth"));

  // --- stimuli, corpus, sessions ---------------------------------------------
  py::class_<Anchors>(m, "Anchors")
      .def(py::init<>())
      .def_readwrite("disambig_index", &Anchors::disambig_index)
      .def_readwrite("extra_token_indices", &Anchors::extra_token_indices)
      .def_readwrite("align_anchor", &Anchors::align_anchor)
      .def_readwrite("trailing_trim", &Anchors::trailing_trim);
  py::class_<StimulusPair>(m, "StimulusPair")
      .def(py::init<>())
      .def_readwrite("pair_id", &StimulusPair::pair_id)
      .def_readwrite("kind", &StimulusPair::kind)
      .def_readwrite("stimulus_tokens", &StimulusPair::stimulus_tokens)
      .def_readwrite("baseline_tokens", &StimulusPair::baseline_tokens)
      .def_readwrite("anchors", &StimulusPair::anchors)
      .def_readwrite("control_stimulus_tokens", &StimulusPair::control_stimulus_tokens)
      .def_readwrite("control_baseline_tokens", &StimulusPair::control_baseline_tokens)
      .def("validate", [](const StimulusPair& p) { validate(p); });
  m.def("read_corpus", [](const std::string& text) { return read_corpus(text); },
        py::arg("text"));
  m.def("write_corpus_line", &write_corpus_line, py::arg("pair"));

  py::class_<ParseOutputs>(m, "ParseOutputs")
      .def(py::init<std::vector<std::uint32_t>, std::vector<std::uint32_t>>(),
           py::arg("heads"), py::arg("labels"))
      .def_readwrite("heads", &ParseOutputs::heads)
      .def_readwrite("labels", &ParseOutputs::labels);
  py::class_<BackendResult>(m, "BackendResult")
      .def(py::init([](std::vector<std::vector<std::vector<double>>> states,
                       std::optional<ParseOutputs> outputs) {
             return BackendResult{std::move(states), std::move(outputs)};
           }),
           py::arg("states"), py::arg("outputs") = py::none(),
           "states is indexed [layer][position][component].")
      .def_readwrite("states", &BackendResult::states)
      .def_readwrite("outputs", &BackendResult::outputs);
  py::class_<Backend, PyBackend, std::shared_ptr<Backend>>(m, "Backend")
      .def(py::init<>())
      .def("run", &Backend::run, py::arg("prefix"));
  py::class_<MockBackendSpec>(m, "MockBackendSpec")
      .def(py::init([](MockMode mode, std::size_t dim, std::uint64_t seed, std::size_t layers) {
             return MockBackendSpec{mode, dim, seed, layers};
           }),
           py::arg("mode") = MockMode::kBidirectional, py::arg("dim") = 4,
           py::arg("seed") = 0, py::arg("layers") = 1)
      .def_readwrite("mode", &MockBackendSpec::mode)
      .def_readwrite("dim", &MockBackendSpec::dim)
      .def_readwrite("seed", &MockBackendSpec::seed)
      .def_readwrite("layers", &MockBackendSpec::layers);
  py::class_<MockBackend, Backend, std::shared_ptr<MockBackend>>(m, "MockBackend")
      .def(py::init<MockBackendSpec>(), py::arg("spec"));
  m.def(
      "mock_state",
      [](const MockBackendSpec& spec, const std::vector<std::string>& prefix,
         std::size_t position, std::size_t layer, std::size_t component) {
        return mock_state(spec, prefix, position, layer, component);
      },
      py::arg("spec"), py::arg("prefix"), py::arg("position"), py::arg("layer"),
      py::arg("component"));

  py::class_<PrefixRecord>(m, "PrefixRecord")
      .def_readonly("t", &PrefixRecord::t)
      .def_readonly("token", &PrefixRecord::token)
      .def_readonly("outputs", &PrefixRecord::outputs);
  py::class_<Session>(m, "Session")
      .def(py::init([](std::shared_ptr<Backend> backend, std::optional<PrismShape> shape,
                       bool strict) {
             return Session(std::move(backend), SessionOptions{shape, strict});
           }),
           py::arg("backend"), py::arg("shape") = py::none(), py::arg("strict") = false,
           py::keep_alive<1, 2>())
      .def("feed", &Session::feed, py::arg("token"), py::return_value_policy::copy)
      .def("reset", &Session::reset)
      .def("__len__", &Session::size)
      .def_property_readonly("records", [](const Session& s) {
        return std::vector<PrefixRecord>(s.records().begin(), s.records().end());
      })
      .def_property_readonly("prism", &Session::prism, py::return_value_policy::copy)
      .def("revision_points",
           [](const Session& s) { return revision_points(s.records()); });

  // --- meaning pipelines -------------------------------------------------------
  py::class_<PairAnalysis>(m, "PairAnalysis")
      .def_readonly("charts", &PairAnalysis::charts)
      .def_readonly("warnings", &PairAnalysis::warnings);
  m.def("pair_pipeline", &pair_pipeline, py::arg("stimulus"), py::arg("baseline"),
        py::arg("pair"), py::arg("reference") = py::none());
  m.def(
      "table1",
      [](const std::vector<std::pair<StimulusKind, const StatePrism*>>& items,
         std::size_t k_max, Table1Mode mode, Aggregation agg, std::optional<std::size_t> layer) {
        std::vector<Table1Item> in;
        for (const auto& [kind, prism] : items) in.push_back({kind, std::cref(*prism)});
        const Table1 t = table1_pipeline(in, k_max, mode, agg, layer);
        py::dict out;
        for (const Table1Row& row : t.rows) out[py::str(std::string(to_string(row.kind)))] = row.values;
        return out;
      },
      py::arg("items"), py::arg("k_max") = 7, py::arg("mode") = Table1Mode::kMeaning,
      py::arg("aggregation") = Aggregation::kPooled, py::arg("layer") = py::none(),
      "items is a list of (StimulusKind, StatePrism); returns {kind name: values}.");

  // --- formats ---------------------------------------------------------------
  m.def(
      "write_state_dump",
      [](const StatePrism& prism, const std::string& model_id, const std::string& stimulus_id,
         const std::vector<std::string>& tokens) {
        return py::bytes(write_state_dump(
            prism, make_states_header(prism, model_id, stimulus_id, tokens)));
      },
      py::arg("prism"), py::arg("model_id"), py::arg("stimulus_id"), py::arg("tokens"));
  m.def(
      "write_timeline_dump",
      [](const ParseTimeline& tl, const std::string& model_id, const std::string& stimulus_id,
         const std::vector<std::string>& tokens) {
        return py::bytes(write_timeline_dump(
            tl, make_timeline_header(tl, model_id, stimulus_id, tokens)));
      },
      py::arg("timeline"), py::arg("model_id"), py::arg("stimulus_id"), py::arg("tokens"));
  const auto header_dict = [](const DumpHeader& h) {
    py::dict d;
    d["kind"] = h.kind == DumpKind::kStates ? "states" : "parse_timeline";
    d["layers"] = h.layers;
    d["tokens"] = h.tokens;
    d["dim"] = h.dim;
    d["prefix_sized"] = h.prefix_sized;
    d["root_slot"] = h.root_slot;
    d["labels"] = h.labels;
    d["model_id"] = h.model_id;
    d["stimulus_id"] = h.stimulus_id;
    d["token_strings"] = h.token_strings;
    return d;
  };
  m.def(
      "read_state_dump",
      [header_dict](const py::bytes& b) {
        StateDump d = read_state_dump(std::string(b));
        return py::make_tuple(header_dict(d.header), std::move(d.prism));
      },
      py::arg("data"));
  m.def(
      "read_timeline_dump",
      [header_dict](const py::bytes& b) {
        TimelineDump d = read_timeline_dump(std::string(b));
        return py::make_tuple(header_dict(d.header), std::move(d.timeline));
      },
      py::arg("data"));
  m.def("export_chart_csv", py::overload_cast<const TriChart&>(&export_chart_csv),
        py::arg("chart"));
  m.def("export_chart_json", &export_chart_json, py::arg("chart"));
  m.def("parse_chart_json", [](const std::string& s) { return parse_chart_json(s); },
        py::arg("text"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "riprism");
        std::vector<char*> argv;
        for (std::string& a : args) argv.push_back(a.data());
        return riprism::cli::run_cli(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Runs the command line with the given arguments; returns the exit code.");
}
