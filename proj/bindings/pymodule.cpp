// Python bindings for the core pipeline: corpus handling, rule learning,
// parsing, entity linking, the temporal store, verbalization and scoring.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framekit/corpus.hpp"
#include "framekit/eval.hpp"
#include "framekit/gazetteer.hpp"
#include "framekit/parser.hpp"
#include "framekit/registry.hpp"
#include "framekit/roundtrip.hpp"
#include "framekit/rules.hpp"
#include "framekit/store.hpp"
#include "framekit/training.hpp"
#include "framekit/verbalizer.hpp"

namespace py = pybind11;
using namespace framekit;

namespace {

LearnerConfig make_config(int max_literals, double min_laplace, std::int64_t min_coverage,
                          bool set_merge) {
  LearnerConfig cfg;
  cfg.max_literals = max_literals;
  cfg.min_laplace = min_laplace;
  cfg.min_coverage = min_coverage;
  cfg.set_merge = set_merge;
  cfg.validate();
  return cfg;
}

Day parse_day_arg(const std::string& iso) {
  auto d = parse_date(iso);
  if (!d) throw Error("expected YYYY-MM-DD, got '" + iso + "'");
  return *d;
}

std::string time_repr(const TimeValue& t) {
  switch (t.kind) {
    case TimeValue::Kind::Unknown: return "unknown";
    case TimeValue::Kind::Approx: return "approx(" + format_date(t.day) + ")";
    case TimeValue::Kind::Exact: return "date(" + format_date(t.day) + ")";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "frame-semantic information extraction toolkit";

  py::register_exception<Error>(m, "FramekitError");

  py::class_<Token>(m, "Token")
      .def(py::init([](std::string surface, std::string lemma, std::string pos, std::string ner,
                       std::string hypernym) {
             return Token{std::move(surface), std::move(lemma), std::move(pos), std::move(ner),
                          std::move(hypernym)};
           }),
           py::arg("surface"), py::arg("lemma"), py::arg("pos"), py::arg("ner") = "O",
           py::arg("hypernym") = kNone)
      .def_readwrite("surface", &Token::surface)
      .def_readwrite("lemma", &Token::lemma)
      .def_readwrite("pos", &Token::pos)
      .def_readwrite("ner", &Token::ner)
      .def_readwrite("hypernym", &Token::hypernym)
      .def("__repr__", [](const Token& t) { return "Token('" + t.surface + "')"; })
      .def(py::self == py::self);

  py::class_<Span>(m, "Span")
      .def(py::init([](int begin, int end) { return Span{begin, end}; }), py::arg("begin"),
           py::arg("end"))
      .def_readwrite("begin", &Span::begin)
      .def_readwrite("end", &Span::end)
      .def("__repr__",
           [](const Span& s) {
             return "Span(" + std::to_string(s.begin) + ", " + std::to_string(s.end) + ")";
           })
      .def(py::self == py::self);

  py::class_<FrameElementSpan>(m, "FrameElementSpan")
      .def(py::init([](std::string name, Span span, double confidence) {
             return FrameElementSpan{std::move(name), span, confidence};
           }),
           py::arg("name"), py::arg("span"), py::arg("confidence") = 1.0)
      .def_readwrite("name", &FrameElementSpan::name)
      .def_readwrite("span", &FrameElementSpan::span)
      .def_readwrite("confidence", &FrameElementSpan::confidence)
      .def(py::self == py::self);

  py::class_<FrameAnnotation>(m, "FrameAnnotation")
      .def(py::init([](std::string frame, Span target, std::vector<FrameElementSpan> elements,
                       double confidence) {
             return FrameAnnotation{std::move(frame), target, std::move(elements), confidence};
           }),
           py::arg("frame"), py::arg("target"), py::arg("elements") = std::vector<FrameElementSpan>{},
           py::arg("confidence") = 1.0)
      .def_readwrite("frame", &FrameAnnotation::frame)
      .def_readwrite("target", &FrameAnnotation::target)
      .def_readwrite("elements", &FrameAnnotation::elements)
      .def_readwrite("confidence", &FrameAnnotation::confidence)
      .def("__repr__",
           [](const FrameAnnotation& a) {
             return "FrameAnnotation('" + a.frame + "', [" + std::to_string(a.target.begin) +
                    ", " + std::to_string(a.target.end) + "))";
           })
      .def(py::self == py::self);

  py::class_<Sentence>(m, "Sentence")
      .def(py::init([](std::vector<Token> tokens, std::string doc_id,
                       std::optional<std::string> pub_date) {
             Sentence s;
             s.tokens = std::move(tokens);
             s.doc_id = std::move(doc_id);
             if (pub_date) s.pub_date = parse_day_arg(*pub_date);
             return s;
           }),
           py::arg("tokens"), py::arg("doc_id") = "", py::arg("pub_date") = py::none())
      .def_readwrite("tokens", &Sentence::tokens)
      .def_readwrite("doc_id", &Sentence::doc_id)
      .def_readwrite("gold", &Sentence::gold)
      .def_property(
          "pub_date",
          [](const Sentence& s) -> std::optional<std::string> {
            if (!s.pub_date) return std::nullopt;
            return format_date(*s.pub_date);
          },
          [](Sentence& s, std::optional<std::string> iso) {
            if (iso) {
              s.pub_date = parse_day_arg(*iso);
            } else {
              s.pub_date.reset();
            }
          })
      .def("text", &Sentence::text)
      .def("__len__", &Sentence::size)
      .def("__repr__", [](const Sentence& s) { return "Sentence('" + s.text() + "')"; });

  // corpus
  m.def("load_corpus", &load_corpus, py::arg("path"));
  m.def("write_corpus", &write_corpus, py::arg("sentences"));
  m.def("write_corpus_file", &write_corpus_file, py::arg("sentences"), py::arg("path"));
  m.def("extract_window", &extract_window, py::arg("sentence"), py::arg("index"));
  m.def("extract_fe_window", &extract_fe_window, py::arg("sentence"), py::arg("index"),
        py::arg("target_index"));
  m.def("target_schema", [] { return target_schema(); });
  m.def("fe_schema", [] { return fe_schema(); });
  m.attr("NONE_MARKER") = kNone;

  // rule learning
  m.def("laplace", &laplace, py::arg("n"), py::arg("m"));
  m.def("laplace_percent", &laplace_percent, py::arg("n"), py::arg("m"));

  py::class_<Rule>(m, "Rule")
      .def_readonly("n", &Rule::n)
      .def_readonly("m", &Rule::m)
      .def_property_readonly("laplace", &Rule::laplace_ratio)
      .def_property_readonly("percent", &Rule::percent)
      .def_property_readonly("pattern",
                             [](const Rule& r) { return pattern_to_text(r.pattern); })
      .def("__repr__", [](const Rule& r) {
        return pattern_to_text(r.pattern) + " n=" + std::to_string(r.n) +
               " m=" + std::to_string(r.m);
      });

  py::class_<RuleSet>(m, "RuleSet")
      .def_readonly("label", &RuleSet::label)
      .def_readonly("schema", &RuleSet::schema)
      .def_readonly("rules", &RuleSet::rules)
      .def_readonly("threshold", &RuleSet::threshold)
      .def("__len__", [](const RuleSet& rs) { return rs.rules.size(); })
      .def("__repr__", [](const RuleSet& rs) {
        return "RuleSet('" + rs.label + "', " + std::to_string(rs.rules.size()) + " rules)";
      });

  m.def(
      "learn_ruleset",
      [](const std::vector<Example>& examples, const std::string& label,
         const std::vector<std::string>& schema, int max_literals, double min_laplace,
         std::int64_t min_coverage, bool set_merge) {
        LearnResult res = learn_ruleset(examples, label, schema,
                                        make_config(max_literals, min_laplace, min_coverage,
                                                    set_merge));
        return py::make_tuple(std::move(res.ruleset), res.uncovered_positives);
      },
      py::arg("examples"), py::arg("label"), py::arg("schema"), py::arg("max_literals") = 3,
      py::arg("min_laplace") = 0.66, py::arg("min_coverage") = 2, py::arg("set_merge") = true,
      "Sequential-covering rule induction; returns (ruleset, uncovered_positives).");

  m.def(
      "classify",
      [](const RuleSet& rs, const std::vector<std::string>& fv) -> std::optional<double> {
        auto conf = classify(rs, fv);
        if (!conf) return std::nullopt;
        return conf->value();
      },
      py::arg("ruleset"), py::arg("feature_vector"),
      "Max laplace over matching rules, or None.");

  m.def("serialize_ruleset", &serialize_ruleset, py::arg("ruleset"));
  m.def("parse_ruleset", &parse_ruleset, py::arg("text"));
  m.def("load_ruleset", &load_ruleset, py::arg("path"));
  m.def("save_ruleset", &save_ruleset, py::arg("ruleset"), py::arg("path"));

  // registry
  py::class_<FrameRegistry>(m, "FrameRegistry")
      .def("__len__", &FrameRegistry::size)
      .def("frame_names",
           [](const FrameRegistry& reg) {
             std::vector<std::string> names;
             for (const auto& [name, def] : reg.frames()) names.push_back(name);
             return names;
           })
      .def("frame_kind",
           [](const FrameRegistry& reg, const std::string& name) {
             return reg.at(name).kind == FrameKind::State ? "state" : "event";
           })
      .def("elements",
           [](const FrameRegistry& reg, const std::string& name) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& fe : reg.at(name).elements) {
               out.emplace_back(fe.name, filler_kind_name(fe.filler));
             }
             return out;
           })
      .def("anchor_fes",
           [](const FrameRegistry& reg, const std::string& name) {
             return reg.at(name).anchor_fes;
           })
      .def("languages", [](const FrameRegistry& reg, const std::string& name) {
        std::vector<std::string> out;
        for (const auto& [lang, tpl] : reg.at(name).templates) out.push_back(lang);
        return out;
      });
  m.def("load_registry", &load_registry, py::arg("path"));

  // entity linking
  py::class_<Filler>(m, "Filler")
      .def_readonly("linked", &Filler::linked)
      .def_readonly("entity_id", &Filler::entity_id)
      .def_readonly("text", &Filler::text)
      .def_static("entity", &Filler::entity, py::arg("entity_id"))
      .def_static("unidentified", &Filler::unidentified, py::arg("text"))
      .def("__repr__",
           [](const Filler& f) {
             return f.linked ? "Filler(entity='" + f.entity_id + "')"
                             : "Filler(text='" + f.text + "')";
           })
      .def(py::self == py::self);

  py::class_<Gazetteer>(m, "Gazetteer")
      .def("__len__", &Gazetteer::size)
      .def("aliases_of", [](const Gazetteer& g, const std::string& id) {
        return g.at(id).aliases;
      });
  m.def("load_gazetteer", [](const std::string& path, bool case_fold) {
        return load_gazetteer(path, NormalizeConfig{case_fold});
      },
      py::arg("path"), py::arg("case_fold") = true);
  m.def(
      "link_mention",
      [](const std::string& text, const std::string& kind, const Gazetteer& gaz,
         const TemporalStore* store) {
        return link_mention(text, parse_filler_kind(kind), gaz, store);
      },
      py::arg("text"), py::arg("expected_kind"), py::arg("gazetteer"),
      py::arg("store") = nullptr);

  // parsing
  py::class_<ParserModel>(m, "ParserModel")
      .def("target_frames", [](const ParserModel& model) {
        std::vector<std::string> out;
        for (const auto& [frame, rs] : model.target_rulesets()) out.push_back(frame);
        return out;
      });
  m.def("load_model", &load_model, py::arg("dir"), py::arg("registry"),
        py::keep_alive<0, 2>());
  m.def("identify_targets",
        [](const Sentence& s, const ParserModel& model) {
          std::vector<std::tuple<int, std::string, double>> out;
          for (const auto& hit : identify_targets(s, model)) {
            out.emplace_back(hit.index, hit.frame, hit.confidence.value());
          }
          return out;
        },
        py::arg("sentence"), py::arg("model"));
  m.def("identify_frame_elements", &identify_frame_elements, py::arg("sentence"),
        py::arg("target_index"), py::arg("frame"), py::arg("model"));
  m.def("parse_sentence", &parse_sentence, py::arg("sentence"), py::arg("model"));
  m.def("parse_corpus", &parse_corpus, py::arg("sentences"), py::arg("model"),
        py::arg("jobs") = 1);

  // temporal store
  py::class_<FrameInstance>(m, "FrameInstance")
      .def_readonly("id", &FrameInstance::id)
      .def_readonly("frame", &FrameInstance::frame)
      .def_readonly("fillers", &FrameInstance::fillers)
      .def_readonly("count", &FrameInstance::count)
      .def_property_readonly("time", [](const FrameInstance& i) { return time_repr(i.time); })
      .def("__repr__", [](const FrameInstance& i) {
        return "FrameInstance(" + i.id + ", " + i.frame + ", count=" +
               std::to_string(i.count) + ")";
      });

  py::class_<TemporalStore>(m, "TemporalStore")
      .def(py::init<const FrameRegistry*>(), py::arg("registry"), py::keep_alive<1, 2>())
      .def(
          "ingest",
          [](TemporalStore& store, const FrameAnnotation& ann, const Sentence& s,
             const Gazetteer& gaz, int sentence_index) {
            IngestOutcome out = store.ingest(ann, s, gaz, sentence_index);
            return py::make_tuple(out.instance_id, out.merged);
          },
          py::arg("annotation"), py::arg("sentence"), py::arg("gazetteer"),
          py::arg("sentence_index") = 0,
          "Link fillers, resolve time and merge duplicates; returns (instance_id, merged).")
      .def("facts_at",
           [](const TemporalStore& store, const std::string& iso) {
             std::vector<FrameInstance> out;
             for (const FrameInstance* inst : store.facts_at(parse_day_arg(iso))) {
               out.push_back(*inst);
             }
             return out;
           },
           py::arg("date"))
      .def("entity_profile",
           [](const TemporalStore& store, const std::string& id) {
             std::vector<FrameInstance> out;
             for (const FrameInstance* inst : store.entity_profile(id)) out.push_back(*inst);
             return out;
           },
           py::arg("entity_id"))
      .def("instances",
           [](const TemporalStore& store) { return store.instances(); })
      .def("instance_count", &TemporalStore::instance_count, py::arg("entity_id"))
      .def("total_ingests", &TemporalStore::total_ingests)
      .def("save", [](const TemporalStore& store, const std::string& path) {
        save_store(store, path);
      },
           py::arg("path"))
      .def("__len__", [](const TemporalStore& store) { return store.instances().size(); });
  m.def("load_store", &load_store, py::arg("path"), py::arg("registry"),
        py::keep_alive<0, 2>());

  // verbalization
  m.def(
      "verbalize",
      [](const FrameInstance& instance, const std::string& lang, const FrameRegistry& registry,
         const Gazetteer& gazetteer) {
        return verbalize(instance, lang, registry, resolver_from(gazetteer)).sentence;
      },
      py::arg("instance"), py::arg("lang"), py::arg("registry"), py::arg("gazetteer"));
  m.def(
      "render_profile",
      [](const TemporalStore& store, const std::string& entity_id, const std::string& lang,
         const FrameRegistry& registry) {
        return render_profile(store.entity_profile(entity_id), lang, registry, store);
      },
      py::arg("store"), py::arg("entity_id"), py::arg("lang"), py::arg("registry"),
      "Fig-style profile report: one verbalized line per stored instance.");

  // round trip
  py::class_<FrameRoundtrip>(m, "FrameRoundtrip")
      .def_readonly("frame", &FrameRoundtrip::frame)
      .def_readonly("generated", &FrameRoundtrip::generated)
      .def_readonly("exact", &FrameRoundtrip::exact)
      .def_readonly("failures", &FrameRoundtrip::failures);
  py::class_<RoundtripReport>(m, "RoundtripReport")
      .def_readonly("frames", &RoundtripReport::frames)
      .def_readonly("conflicts", &RoundtripReport::conflicts)
      .def("all_exact", &RoundtripReport::all_exact)
      .def("summary", &RoundtripReport::summary);
  py::class_<RoundtripResult>(m, "RoundtripResult")
      .def_readonly("report", &RoundtripResult::report)
      .def_readonly("instances", &RoundtripResult::instances)
      .def_property_readonly("model",
                             [](const RoundtripResult& r) -> const ParserModel& {
                               return r.model;
                             },
                             py::return_value_policy::reference_internal)
      .def_property_readonly("gazetteer",
                             [](const RoundtripResult& r) -> const Gazetteer& {
                               return r.gazetteer;
                             },
                             py::return_value_policy::reference_internal);
  m.def("roundtrip_model", &roundtrip_model, py::arg("registry"), py::arg("lang"),
        py::arg("instances_per_frame") = 5, py::arg("seed") = 1, py::keep_alive<0, 1>());

  // evaluation
  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("tp", &MetricsReport::tp)
      .def_readonly("fp", &MetricsReport::fp)
      .def_readonly("fn", &MetricsReport::fn)
      .def_property_readonly("precision", &MetricsReport::precision)
      .def_property_readonly("recall", &MetricsReport::recall)
      .def_property_readonly("f1", &MetricsReport::f1_score)
      .def("__repr__", [](const MetricsReport& r) {
        return "MetricsReport(P=" + format_double(r.precision()) +
               ", R=" + format_double(r.recall()) + ", F1=" + format_double(r.f1_score()) + ")";
      });

  m.def("f1", &f1, py::arg("precision"), py::arg("recall"));
  m.def("score_targets", &score_targets, py::arg("gold"), py::arg("predicted"));
  m.def("score_frame_elements", &score_frame_elements, py::arg("gold"), py::arg("predicted"));
  m.def("per_frame_report",
        [](const AnnotationLayers& gold, const AnnotationLayers& predicted) {
          std::vector<std::pair<std::string, double>> out;
          for (const auto& row : per_frame_report(gold, predicted)) {
            out.emplace_back(row.frame, row.f1);
          }
          return out;
        },
        py::arg("gold"), py::arg("predicted"));
}
