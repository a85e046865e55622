/*
 * Copyright 2026 The serpscale authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "serpscale/dominance.hpp"
#include "serpscale/enumeration.hpp"
#include "serpscale/trec_io.hpp"

namespace py = pybind11;
using namespace serpscale;

namespace {

GainMap gain_map_from(const std::vector<std::string>& gains) {
  std::vector<Rational> parsed;
  for (const std::string& g : gains) parsed.push_back(parse_rational(g));
  return GainMap(std::move(parsed));
}

MetricSpec spec_from(const std::string& name, int depth,
                     const std::string& phi, const std::string& variant,
                     int jk_base) {
  DiscountVariant v = variant == "jk" ? DiscountVariant::JarvelinKekalainen
                                      : DiscountVariant::Microsoft;
  MetricSpec spec;
  if (name == "prec") spec = MetricSpec::prec(depth);
  else if (name == "rr") spec = MetricSpec::rr(depth);
  else if (name == "r1") spec = MetricSpec::r1(depth);
  else if (name == "rbp") spec = MetricSpec::rbp(parse_rational(phi), depth);
  else if (name == "ap") spec = MetricSpec::ap(depth);
  else if (name == "dcg") spec = MetricSpec::dcg(v, depth, jk_base);
  else if (name == "ndcg") spec = MetricSpec::ndcg(v, depth, jk_base);
  else if (name == "err") spec = MetricSpec::err(depth);
  else throw ParameterError("unknown metric " + name);
  spec.validate();
  return spec;
}

SerpUniverse universe_from(const std::string& mode,
                           const std::vector<long>& census, int k,
                           int num_grades, bool allow_large) {
  EnumerationLimits limits;
  limits.unlimited = allow_large;
  if (mode == "perm") {
    if (census.empty())
      throw ParameterError("perm universes need a census");
    GradeCensus c{census};
    if (k > 0 && k < c.total())
      return SerpUniverse::prefixes(k, c.num_grades(), c, limits);
    return SerpUniverse::full_permutations(c, limits);
  }
  if (mode != "prefix") throw ParameterError("unknown universe mode " + mode);
  if (k < 1) throw ParameterError("prefix universes need k >= 1");
  std::optional<GradeCensus> cap;
  int grades = num_grades;
  if (!census.empty()) {
    cap = GradeCensus{census};
    grades = cap->num_grades();
  }
  return SerpUniverse::prefixes(k, grades, cap, limits);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact effectiveness scoring and measurement-scale analysis "
            "for ranked retrieval";

  py::register_exception<Error>(m, "SerpscaleError");

  py::class_<ExactValue>(m, "ExactValue")
      .def("__float__", &ExactValue::as_double)
      .def("__repr__",
           [](const ExactValue& v) {
             return "ExactValue(" + v.exact_text() + ")";
           })
      .def("__eq__", [](const ExactValue& a, const ExactValue& b) {
        return a == b;
      })
      .def("__lt__", [](const ExactValue& a, const ExactValue& b) {
        return a < b;
      })
      .def("is_rational", &ExactValue::is_rational)
      .def("decimal", &ExactValue::decimal, py::arg("places") = 4)
      .def("exact_text", &ExactValue::exact_text);

  py::class_<Serp>(m, "Serp")
      .def(py::init<std::vector<int>>())
      .def_readonly("grades", &Serp::grades)
      .def("text", &Serp::text)
      .def("__repr__",
           [](const Serp& s) { return "Serp(" + s.text() + ")"; });

  py::class_<GradeCensus>(m, "GradeCensus")
      .def(py::init<std::vector<long>>())
      .def_readonly("counts", &GradeCensus::counts)
      .def("total", &GradeCensus::total)
      .def("relevant", &GradeCensus::relevant);

  py::class_<GainMap>(m, "GainMap")
      .def(py::init(&gain_map_from),
           "Gains as exact strings, e.g. ['0', '1/4', '3/4', '1']")
      .def_static("binary", &GainMap::binary)
      .def_static("linear", &GainMap::linear)
      .def("__len__", &GainMap::size);

  py::class_<MetricSpec>(m, "MetricSpec")
      .def(py::init(&spec_from), py::arg("name"), py::arg("depth") = 0,
           py::arg("phi") = "1/2", py::arg("variant") = "microsoft",
           py::arg("jk_base") = 2)
      .def("label", &MetricSpec::label);

  py::class_<SerpUniverse>(m, "SerpUniverse")
      .def(py::init(&universe_from), py::arg("mode"),
           py::arg("census") = std::vector<long>{}, py::arg("k") = 0,
           py::arg("num_grades") = 2, py::arg("allow_large") = false)
      .def("__len__", &SerpUniverse::size)
      .def("members", &SerpUniverse::members)
      .def("census", &SerpUniverse::census);

  py::class_<Intervalizer>(m, "Intervalizer")
      .def("__len__", &Intervalizer::size)
      .def("sources", &Intervalizer::sources)
      .def("target",
           [](const Intervalizer& iv, size_t i) {
             return fraction_string(iv.target(i));
           })
      .def("map_value", [](const Intervalizer& iv, const ExactValue& raw) {
        return fraction_string(iv.map_value(raw));
      });

  m.def("score", &score_serp, py::arg("serp"), py::arg("gain_map"),
        py::arg("census"), py::arg("spec"),
        "Exact metric score of one SERP");
  m.def("gain_vector", [](const Serp& serp, const GainMap& map) {
    std::vector<std::string> out;
    for (const Rational& g : gain_vector(serp, map))
      out.push_back(fraction_string(g));
    return out;
  });
  m.def("distinct_scores", &distinct_scores, py::arg("spec"),
        py::arg("gain_map"), py::arg("universe"),
        "Sorted exact distinct score set over a universe");
  m.def("build_intervalizer", &build_intervalizer, py::arg("spec"),
        py::arg("gain_map"), py::arg("universe"));
  m.def("equispacing_check", [](const MetricSpec& spec, const GainMap& map,
                                const SerpUniverse& universe) {
    EquispacingReport report = equispacing_check(spec, map, universe);
    std::vector<std::string> gaps;
    for (const ExactValue& gap : report.gaps)
      gaps.push_back(gap.exact_text());
    return py::make_tuple(report.uniform, gaps);
  });
  m.def("rule1_non_inferior", &rule1_non_inferior);
  m.def("rule2_non_inferior", &rule2_non_inferior);
  m.def(
      "hasse_dot",
      [](const SerpUniverse& universe) {
        DominanceRelation relation = DominanceRelation::build(universe);
        return to_dot(hasse(relation));
      },
      "DOT text of the non-inferiority Hasse diagram");
  m.def(
      "audit_metric",
      [](const SerpUniverse& universe, const MetricSpec& spec,
         const GainMap& map) {
        DominanceRelation relation = DominanceRelation::build(universe);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const AuditViolation& v : audit_metric(relation, spec, map))
          pairs.emplace_back(relation.universe().member(v.dominating).text(),
                             relation.universe().member(v.dominated).text());
        return pairs;
      },
      "Dominance-order violations of a metric; empty means consistent");
  m.def("evaluate_files",
        [](const std::string& qrels_text, const std::string& run_text,
           const std::vector<MetricSpec>& specs, const GainMap& map, int k) {
          std::istringstream qrels_in(qrels_text), run_in(run_text);
          auto qrels = parse_qrels(qrels_in);
          auto runs = parse_run(run_in);
          ScoreReport report = evaluate(runs, qrels, specs, map, k);
          return report_tsv(report, 4);
        },
        py::arg("qrels_text"), py::arg("run_text"), py::arg("specs"),
        py::arg("gain_map"), py::arg("k"),
        "Evaluate qrels/run text through the reporting pipeline, TSV out");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
