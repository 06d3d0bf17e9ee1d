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

#include "cli/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <thread>
#include <vector>

#include "riprism/chart_export.h"
#include "riprism/corpus.h"
#include "riprism/dump_io.h"
#include "riprism/error.h"

namespace riprism::cli {
namespace {

namespace fs = std::filesystem;

constexpr StimulusKind kKindOrder[] = {StimulusKind::kNNC, StimulusKind::kNPS,
                                       StimulusKind::kMVRR};

struct Exclusion {
  std::string pair_id;
  std::string role;
  std::string reason;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_or_dash(double v) {
  return std::isnan(v) ? "-" : format_double(v);
}

// Runs work(k) for k in [0, n) on up to `jobs` threads. Exceptions are kept
// per item and the first one in item order is rethrown.
void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& work) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto drain = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        work(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(drain);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<StimulusPair> load_corpus(const RunConfig& config) {
  return read_corpus(read_file(config.corpus_path));
}

fs::path command_dir(const RunConfig& config, const std::string& command) {
  const fs::path dir = fs::path(config.out_dir) / command;
  fs::create_directories(dir);
  return dir;
}

void write_exclusions(const fs::path& dir, const std::vector<Exclusion>& excluded) {
  std::string out = "pair_id,role,reason\n";
  for (const Exclusion& e : excluded) {
    out += csv_field(e.pair_id) + "," + csv_field(e.role) + "," +
           csv_field(e.reason) + "\n";
    std::cerr << "riprism: excluded " << e.pair_id << " (" << e.role
              << "): " << e.reason << "\n";
  }
  write_file((dir / "exclusions.csv").string(), out);
}

// Loads the states dump for one role, or returns an exclusion reason.
struct LoadedStates {
  std::optional<StatePrism> prism;
  std::string reason;
};

LoadedStates load_states(const RunConfig& config, const std::string& pair_id,
                         const std::string& role, const std::string& suffix,
                         const std::vector<std::string>& tokens) {
  const std::string path = dump_path(config, pair_id, role, suffix);
  if (!fs::exists(path)) {
    return {std::nullopt, "missing dump " + fs::path(path).filename().string()};
  }
  StateDump dump = read_state_dump(read_file(path));
  if (dump.header.token_strings != tokens) {
    return {std::nullopt, "dump tokens differ from the corpus tokens"};
  }
  if (config.layer && *config.layer >= dump.prism.layers()) {
    throw ConfigError("--layer " + std::to_string(*config.layer) +
                      " out of range for " + fs::path(path).filename().string() +
                      " with " + std::to_string(dump.prism.layers()) + " layers");
  }
  return {std::move(dump.prism), {}};
}

struct LoadedTimeline {
  std::optional<ParseTimeline> timeline;
  std::string reason;
};

LoadedTimeline load_timeline(const RunConfig& config, const std::string& pair_id,
                             const std::string& role,
                             const std::vector<std::string>& tokens) {
  const std::string path = dump_path(config, pair_id, role, "parse");
  if (!fs::exists(path)) {
    return {std::nullopt, "missing dump " + fs::path(path).filename().string()};
  }
  TimelineDump dump = read_timeline_dump(read_file(path));
  if (dump.header.token_strings != tokens) {
    return {std::nullopt, "dump tokens differ from the corpus tokens"};
  }
  if (dump.timeline.n_tokens() < 2) {
    return {std::nullopt, "timeline shorter than 2 tokens"};
  }
  return {std::move(dump.timeline), {}};
}

void write_chart(const fs::path& dir, const std::string& stem, const TriChart& chart) {
  write_file((dir / (stem + ".csv")).string(), export_chart_csv(chart));
  write_file((dir / (stem + ".json")).string(), export_chart_json(chart));
}

TriChart mask_to_chart(const MaskChart& mask) {
  TriChart out(mask.n_tokens());
  for (std::size_t t = 1; t <= mask.n_tokens(); ++t) {
    for (std::size_t i = 1; i <= t; ++i) out.set(t, i, mask.at(t, i) ? 1.0 : 0.0);
  }
  return out;
}

// --- meaning -------------------------------------------------------------

struct MeaningItem {
  std::vector<Exclusion> excluded;
  std::optional<PairAnalysis> analysis;
  std::optional<CausalResult> causal;
};

MeaningItem process_meaning_item(const RunConfig& config, const StimulusPair& pair) {
  MeaningItem item;
  LoadedStates s = load_states(config, pair.pair_id, "stimulus", "states",
                               pair.stimulus_tokens);
  LoadedStates b = load_states(config, pair.pair_id, "baseline", "states",
                               pair.baseline_tokens);
  if (!s.prism) item.excluded.push_back({pair.pair_id, "stimulus", s.reason});
  if (!b.prism) item.excluded.push_back({pair.pair_id, "baseline", b.reason});
  if (!s.prism || !b.prism) return item;
  item.analysis = pair_pipeline(*s.prism, *b.prism, pair, config.reference);

  if (!pair.has_controls()) return item;
  if (pair.kind == StimulusKind::kNNC) {
    item.analysis->warnings.push_back(pair.pair_id +
                                      ": control variants ignored for NNC pairs");
    return item;
  }
  LoadedStates c = load_states(config, pair.pair_id, "control_stimulus", "states",
                               *pair.control_stimulus_tokens);
  LoadedStates d = load_states(config, pair.pair_id, "control_baseline", "states",
                               *pair.control_baseline_tokens);
  if (!c.prism) item.excluded.push_back({pair.pair_id, "control_stimulus", c.reason});
  if (!d.prism) item.excluded.push_back({pair.pair_id, "control_baseline", d.reason});
  if (!c.prism || !d.prism) return item;
  item.causal = causal_pipeline(StateSequence::from_final_row(*s.prism),
                                StateSequence::from_final_row(*b.prism),
                                StateSequence::from_final_row(*c.prism),
                                StateSequence::from_final_row(*d.prism),
                                pair.anchors.extra_token_indices,
                                pair.anchors.align_anchor);
  return item;
}

}  // namespace

void validate_config(const RunConfig& config) {
  if (config.corpus_path.empty()) throw ConfigError("--corpus is required");
  if (config.dumps_dir.empty()) throw ConfigError("--dumps is required");
  if (config.out_dir.empty()) throw ConfigError("--out is required");
  if (!(config.tau > 0.0) || config.tau > kLn2) {
    throw ConfigError("--tau must lie in (0, ln 2]");
  }
  if (config.k_max == 0) throw ConfigError("--k-max must be positive");
  if (!fs::is_regular_file(config.corpus_path)) {
    throw ConfigError("corpus '" + config.corpus_path + "' not found");
  }
  if (!fs::is_directory(config.dumps_dir)) {
    throw ConfigError("dump directory '" + config.dumps_dir + "' not found");
  }
}

std::string dump_path(const RunConfig& config, const std::string& pair_id,
                      const std::string& role, const std::string& suffix) {
  return (fs::path(config.dumps_dir) / (pair_id + "." + role + "." + suffix + ".isd"))
      .string();
}

int cmd_meaning(const RunConfig& config) {
  const std::vector<StimulusPair> corpus = load_corpus(config);
  std::vector<MeaningItem> items(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t k) {
    items[k] = process_meaning_item(config, corpus[k]);
  });

  const fs::path dir = command_dir(config, "meaning");
  std::vector<Exclusion> excluded;
  std::vector<std::string> warnings;
  std::string summary = "kind,layer,items,peak_t,peak_i,timestep_token,token,value\n";
  for (StimulusKind kind : kKindOrder) {
    std::vector<LayerChartSet> sets;
    std::vector<CausalResult> causal;
    const StimulusPair* first = nullptr;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      if (corpus[k].kind != kind) continue;
      const MeaningItem& item = items[k];
      if (item.analysis) {
        sets.push_back(item.analysis->charts);
        warnings.insert(warnings.end(), item.analysis->warnings.begin(),
                        item.analysis->warnings.end());
        if (!first) first = &corpus[k];
      }
      if (item.causal) causal.push_back(*item.causal);
    }
    const std::string name(to_string(kind));
    if (!causal.empty()) {
      const CausalResult mean = mean_causal(causal);
      std::string out = "layer,position,difference,d_ab,d_cd\n";
      for (std::size_t layer = 0; layer < mean.difference.size(); ++layer) {
        if (config.layer && layer != *config.layer) continue;
        for (std::size_t p = 0; p < mean.difference[layer].size(); ++p) {
          out += std::to_string(layer) + "," + std::to_string(p + 1) + "," +
                 format_double(mean.difference[layer][p]) + "," +
                 format_double(mean.d_ab[layer][p]) + "," +
                 format_double(mean.d_cd[layer][p]) + "\n";
        }
      }
      write_file((dir / ("causal_" + name + ".csv")).string(), out);
    }
    if (sets.empty()) continue;
    const LayerChartSet mean = mean_layer_charts(sets);
    const fs::path kind_dir = dir / name;
    fs::create_directories(kind_dir);
    const std::size_t offset = first->anchors.align_anchor - 1;
    for (std::size_t layer = 0; layer < mean.size(); ++layer) {
      if (config.layer && layer != *config.layer) continue;
      const TriChart& chart = mean[layer];
      write_chart(kind_dir, "layer_" + std::to_string(layer), chart);
      std::size_t pt = 0, pi = 0;
      double best = -1.0;
      for (std::size_t t = 1; t <= chart.n_tokens(); ++t) {
        for (std::size_t i = 1; i <= t; ++i) {
          if (!chart.is_missing(t, i) && chart.at(t, i) > best) {
            best = chart.at(t, i);
            pt = t;
            pi = i;
          }
        }
      }
      if (pt == 0) continue;
      const auto token_at = [&](std::size_t p) {
        const std::size_t idx = p + offset;
        return idx <= first->stimulus_tokens.size() ? first->stimulus_tokens[idx - 1]
                                                    : std::string();
      };
      summary += name + "," + std::to_string(layer) + "," +
                 std::to_string(sets.size()) + "," + std::to_string(pt) + "," +
                 std::to_string(pi) + "," + csv_field(token_at(pt)) + "," +
                 csv_field(token_at(pi)) + "," + format_double(best) + "\n";
    }
  }
  for (const MeaningItem& item : items) {
    excluded.insert(excluded.end(), item.excluded.begin(), item.excluded.end());
  }
  write_file((dir / "summary.csv").string(), summary);
  std::string warn_text;
  for (const std::string& w : warnings) warn_text += w + "\n";
  write_file((dir / "warnings.txt").string(), warn_text);
  write_exclusions(dir, excluded);
  return kExitOk;
}

// --- dep -----------------------------------------------------------------

namespace {

constexpr Reference kAllReferences[] = {Reference::kFirst, Reference::kPrevious,
                                        Reference::kFinal};
constexpr const char* kRoles[] = {"stimulus", "baseline"};
constexpr EditTarget kTargets[] = {EditTarget::kArc, EditTarget::kLabel};

const char* target_name(EditTarget t) { return t == EditTarget::kArc ? "arc" : "label"; }

struct RoleResult {
  std::map<Reference, TriChart> jsd;
  MaskChart edits[2];
  MaskChart shifts;
  TriChart jsd_previous;
  AlignmentStats stats[2];
};

struct DepItem {
  std::vector<Exclusion> excluded;
  std::optional<RoleResult> roles[2];
  std::map<Reference, TriChart> diff;
};

DepItem process_dep_item(const RunConfig& config, const StimulusPair& pair) {
  DepItem item;
  for (int r = 0; r < 2; ++r) {
    const auto& tokens = r == 0 ? pair.stimulus_tokens : pair.baseline_tokens;
    LoadedTimeline loaded = load_timeline(config, pair.pair_id, kRoles[r], tokens);
    if (!loaded.timeline) {
      item.excluded.push_back({pair.pair_id, kRoles[r], loaded.reason});
      continue;
    }
    RoleResult res;
    for (Reference ref : kAllReferences) res.jsd[ref] = jsd_chart(*loaded.timeline, ref);
    res.jsd_previous = res.jsd[Reference::kPrevious];
    res.shifts = detect_shifts(res.jsd_previous, config.tau);
    for (int k = 0; k < 2; ++k) {
      res.edits[k] = detect_edits(*loaded.timeline, kTargets[k]);
      res.stats[k] = alignment_stats(res.jsd_previous, res.edits[k], config.tau);
    }
    item.roles[r] = std::move(res);
  }
  if (item.roles[0] && item.roles[1]) {
    for (Reference ref : kAllReferences) {
      auto [s, b] = realign_pair(item.roles[0]->jsd.at(ref),
                                 item.roles[1]->jsd.at(ref), pair);
      item.diff[ref] = abs_diff(s, b);
    }
  }
  return item;
}

}  // namespace

int cmd_dep(const RunConfig& config) {
  const std::vector<StimulusPair> corpus = load_corpus(config);
  std::vector<DepItem> items(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t k) {
    items[k] = process_dep_item(config, corpus[k]);
  });
  const Aggregation agg = config.aggregation.value_or(Aggregation::kPerItem);
  const fs::path dir = command_dir(config, "dep");

  std::string per_item = "pair_id,kind,role,target,tp,tn,fp,fn,mcc,ap,edit_ratio\n";
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    for (int r = 0; r < 2; ++r) {
      if (!items[k].roles[r]) continue;
      for (int g = 0; g < 2; ++g) {
        const AlignmentStats& s = items[k].roles[r]->stats[g];
        per_item += csv_field(corpus[k].pair_id) + "," +
                    std::string(to_string(corpus[k].kind)) + "," + kRoles[r] + "," +
                    target_name(kTargets[g]) + "," + std::to_string(s.counts.tp) +
                    "," + std::to_string(s.counts.tn) + "," +
                    std::to_string(s.counts.fp) + "," + std::to_string(s.counts.fn) +
                    "," + format_double(s.mcc) + "," + format_or_dash(s.ap) + "," +
                    format_double(s.edit_ratio) + "\n";
      }
    }
  }
  write_file((dir / "items.csv").string(), per_item);

  // Table-shaped summaries: rows are targets, columns kind x role.
  std::string header = "target";
  for (StimulusKind kind : kKindOrder) {
    header += "," + std::string(to_string(kind)) + "_S," + std::string(to_string(kind)) + "_B";
  }
  header += "\n";
  std::string mcc_table = header, ap_table = header, ratio_table = header;

  for (int g = 0; g < 2; ++g) {
    std::string mcc_row = target_name(kTargets[g]);
    std::string ap_row = mcc_row, ratio_row = mcc_row;
    for (StimulusKind kind : kKindOrder) {
      for (int r = 0; r < 2; ++r) {
        std::vector<const RoleResult*> results;
        for (std::size_t k = 0; k < corpus.size(); ++k) {
          if (corpus[k].kind == kind && items[k].roles[r]) {
            results.push_back(&*items[k].roles[r]);
          }
        }
        double mcc_v = std::nan(""), ap_v = std::nan(""), ratio_v = std::nan("");
        if (!results.empty()) {
          if (agg == Aggregation::kPerItem) {
            double m = 0, a = 0, e = 0;
            std::size_t na = 0;
            for (const RoleResult* res : results) {
              m += res->stats[g].mcc;
              e += res->stats[g].edit_ratio;
              if (!std::isnan(res->stats[g].ap)) {
                a += res->stats[g].ap;
                ++na;
              }
            }
            mcc_v = m / static_cast<double>(results.size());
            ratio_v = e / static_cast<double>(results.size());
            if (na > 0) ap_v = a / static_cast<double>(na);
          } else {
            ConfusionCounts total;
            std::vector<RankedCell> cells;
            std::size_t edits = 0, off_diagonal = 0;
            for (const RoleResult* res : results) {
              total += res->stats[g].counts;
              const MaskChart& truth = res->edits[g];
              for (std::size_t t = 2; t <= truth.n_tokens(); ++t) {
                for (std::size_t i = 1; i < t; ++i) {
                  cells.push_back({res->jsd_previous.at(t, i), truth.at(t, i), t, i});
                  edits += truth.at(t, i) ? 1 : 0;
                  ++off_diagonal;
                }
              }
            }
            mcc_v = mcc(total);
            if (edits > 0) ap_v = average_precision(cells);
            ratio_v = static_cast<double>(edits) / static_cast<double>(off_diagonal);
          }
        }
        mcc_row += "," + format_or_dash(mcc_v);
        ap_row += "," + format_or_dash(ap_v);
        ratio_row += "," + format_or_dash(ratio_v);
      }
    }
    mcc_table += mcc_row + "\n";
    ap_table += ap_row + "\n";
    ratio_table += ratio_row + "\n";
  }
  write_file((dir / "mcc.csv").string(), mcc_table);
  write_file((dir / "ap.csv").string(), ap_table);
  write_file((dir / "edit_ratio.csv").string(), ratio_table);

  // Averaged charts per kind.
  for (StimulusKind kind : kKindOrder) {
    const std::string name(to_string(kind));
    const fs::path kind_dir = dir / name;
    bool any = false;
    for (int r = 0; r < 2; ++r) {
      std::map<Reference, std::vector<TriChart>> jsd;
      std::vector<TriChart> shifts, edits[2];
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        if (corpus[k].kind != kind || !items[k].roles[r]) continue;
        const RoleResult& res = *items[k].roles[r];
        for (const auto& [ref, chart] : res.jsd) jsd[ref].push_back(chart);
        shifts.push_back(mask_to_chart(res.shifts));
        for (int g = 0; g < 2; ++g) edits[g].push_back(mask_to_chart(res.edits[g]));
      }
      if (shifts.empty()) continue;
      if (!any) fs::create_directories(kind_dir);
      any = true;
      const std::string role = kRoles[r];
      for (Reference ref : kAllReferences) {
        if (config.reference && ref != *config.reference) continue;
        write_chart(kind_dir, role + "_jsd_" + std::string(to_string(ref)),
                    mean_charts(jsd[ref]));
      }
      write_chart(kind_dir, role + "_shift_rate", mean_charts(shifts));
      for (int g = 0; g < 2; ++g) {
        write_chart(kind_dir, role + "_edit_rate_" + target_name(kTargets[g]),
                    mean_charts(edits[g]));
      }
    }
    for (Reference ref : kAllReferences) {
      if (config.reference && ref != *config.reference) continue;
      std::vector<TriChart> diffs;
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        if (corpus[k].kind == kind && items[k].diff.count(ref)) {
          diffs.push_back(items[k].diff.at(ref));
        }
      }
      if (diffs.empty()) continue;
      fs::create_directories(kind_dir);
      write_chart(kind_dir, "diff_" + std::string(to_string(ref)), mean_charts(diffs));
    }
  }

  std::vector<Exclusion> excluded;
  for (const DepItem& item : items) {
    excluded.insert(excluded.end(), item.excluded.begin(), item.excluded.end());
  }
  write_exclusions(dir, excluded);
  return kExitOk;
}

// --- table1 --------------------------------------------------------------

int cmd_table1(const RunConfig& config) {
  const std::vector<StimulusPair> corpus = load_corpus(config);
  const bool meaning = config.table1_mode == Table1Mode::kMeaning;
  const std::string suffix = meaning ? "states" : "arcs";
  std::vector<LoadedStates> loaded(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t k) {
    loaded[k] = load_states(config, corpus[k].pair_id, "baseline", suffix,
                            corpus[k].baseline_tokens);
  });

  const Aggregation agg = config.aggregation.value_or(Aggregation::kPooled);
  std::vector<Exclusion> excluded;
  std::vector<Table1Item> table_items;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    if (!loaded[k].prism) {
      excluded.push_back({corpus[k].pair_id, "baseline", loaded[k].reason});
      continue;
    }
    const StatePrism& prism = *loaded[k].prism;
    if (meaning && prism.shape().kind != DimKind::kFixed) {
      throw ConfigError("meaning mode needs fixed-dimension state dumps");
    }
    if (agg == Aggregation::kPerItem) {
      const std::size_t depth = corpus[k].kind == StimulusKind::kNNC
                                    ? std::min(config.k_max, kNncMaxLookahead)
                                    : config.k_max;
      if (depth >= prism.rows()) {
        throw ConfigError("--k-max " + std::to_string(config.k_max) +
                          " exceeds item '" + corpus[k].pair_id + "' (" +
                          std::to_string(prism.rows()) +
                          " tokens) in per-item aggregation");
      }
    }
    table_items.push_back({corpus[k].kind, std::cref(prism)});
  }
  const Table1 table = table1_pipeline(table_items, config.k_max,
                                       config.table1_mode, agg, config.layer);
  std::string out = "kind";
  for (std::size_t k = 1; k <= config.k_max; ++k) out += ",t+" + std::to_string(k);
  out += "\n";
  for (const Table1Row& row : table.rows) {
    out += std::string(to_string(row.kind));
    for (double v : row.values) out += "," + format_or_dash(v);
    out += "\n";
  }
  const fs::path dir = command_dir(config, "table1");
  write_file((dir / "table1.csv").string(), out);
  write_exclusions(dir, excluded);
  return kExitOk;
}

}  // namespace riprism::cli
