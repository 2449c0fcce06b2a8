//
// Copyright 2026 The LinkTrust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end pipeline: synthesize a corpus, build and balance the three
// datasets, cross-validate every classifier family, export precision curves,
// feature rankings and heuristic diagnostics. All emitted bytes are a pure
// function of the seed and options.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "linktrust/csv.hpp"
#include "linktrust/evaluation.hpp"
#include "linktrust/synth.hpp"

namespace linktrust {

inline std::string format_fixed(double value, int digits = 4) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

inline OrderedJson cv_report_to_json(const CvReport& report) {
  OrderedJson out;
  out["auc"] = report.auc;
  out["f_measure"] = report.f_measure;
  out["true_positive_rate"] = report.true_positive_rate;
  out["false_positive_rate"] = report.false_positive_rate;
  out["folds"] = {{"auc", report.fold_auc},
                  {"f_measure", report.fold_f_measure},
                  {"true_positive_rate", report.fold_true_positive_rate},
                  {"false_positive_rate", report.fold_false_positive_rate}};
  return out;
}

inline std::string cv_report_to_text(const CvReport& report) {
  std::string text;
  text += "measure               value\n";
  text += "auc                   " + format_fixed(report.auc) + "\n";
  text += "f_measure             " + format_fixed(report.f_measure) + "\n";
  text += "true_positive_rate    " + format_fixed(report.true_positive_rate) + "\n";
  text += "false_positive_rate   " + format_fixed(report.false_positive_rate) + "\n";
  return text;
}

using CvTable = std::map<Family, std::map<DatasetKind, CvReport>>;

inline OrderedJson cv_table_to_json(const CvTable& table) {
  OrderedJson out;
  for (Family family : kAllFamilies) {
    const auto it = table.find(family);
    if (it == table.end()) continue;
    OrderedJson row;
    for (DatasetKind kind : kAllDatasetKinds) {
      const auto cell = it->second.find(kind);
      if (cell == it->second.end()) continue;
      row[dataset_kind_name(kind)] = cv_report_to_json(cell->second);
    }
    out[family_name(family)] = std::move(row);
  }
  return out;
}

// Aligned text table, one block of four measures per classifier and one
// column per dataset.
inline std::string cv_table_to_text(const CvTable& table) {
  std::string text;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %-20s %14s %20s %12s\n",
                "classifier", "measure", "fake_profiles",
                "friends_restriction", "all_links");
  text += line;
  const char* measures[4] = {"auc", "f_measure", "true_positive_rate",
                             "false_positive_rate"};
  for (Family family : kAllFamilies) {
    const auto it = table.find(family);
    if (it == table.end()) continue;
    for (int m = 0; m < 4; ++m) {
      std::string cells[3];
      int c = 0;
      for (DatasetKind kind : kAllDatasetKinds) {
        const auto cell = it->second.find(kind);
        double value = 0.0;
        if (cell != it->second.end()) {
          const CvReport& r = cell->second;
          value = m == 0   ? r.auc
                  : m == 1 ? r.f_measure
                  : m == 2 ? r.true_positive_rate
                           : r.false_positive_rate;
        }
        cells[c++] = format_fixed(value);
      }
      std::snprintf(line, sizeof(line), "%-16s %-20s %14s %20s %12s\n",
                    m == 0 ? family_name(family) : "", measures[m],
                    cells[0].c_str(), cells[1].c_str(), cells[2].c_str());
      text += line;
    }
  }
  return text;
}

inline std::string curve_to_csv(const PrecisionCurve& curve) {
  std::string text = "k,precision\n";
  for (const auto& [k, precision] : curve.points) {
    text += std::to_string(k) + "," + csv_detail::format_double(precision) + "\n";
  }
  return text;
}

inline OrderedJson curve_to_json(const PrecisionCurve& curve) {
  OrderedJson points = OrderedJson::array();
  for (const auto& [k, precision] : curve.points) {
    points.push_back({{"k", k}, {"precision", precision}});
  }
  return points;
}

inline OrderedJson ranking_to_json(const FeatureRanking& ranking) {
  OrderedJson out = OrderedJson::array();
  for (const auto& entry : ranking.entries) {
    out.push_back({{"feature", entry.feature}, {"information_gain", entry.gain}});
  }
  return out;
}

inline std::string ranking_to_text(const FeatureRanking& ranking) {
  std::string text;
  char line[96];
  std::snprintf(line, sizeof(line), "%-28s %16s\n", "feature",
                "information_gain");
  text += line;
  for (const auto& entry : ranking.entries) {
    std::snprintf(line, sizeof(line), "%-28s %16s\n", entry.feature.c_str(),
                  format_fixed(entry.gain, 6).c_str());
    text += line;
  }
  return text;
}

struct HeuristicReport {
  std::vector<std::pair<std::size_t, double>> avg_users_precision;
  std::map<std::uint64_t, double> precision_by_cs_value;
  std::map<std::size_t, double> rate_by_rank_position;
};

inline HeuristicReport heuristic_report(std::span<const LinkRecord> corpus,
                                        std::span<const std::size_t> k_list) {
  HeuristicReport report;
  for (std::size_t k : k_list) {
    try {
      report.avg_users_precision.emplace_back(k, cs_avg_precision(corpus, k));
    } catch (const Error& e) {
      if (e.code() != Errc::NoEligibleUsers) throw;
    }
  }
  report.precision_by_cs_value = restriction_precision_by_cs_value(corpus);
  report.rate_by_rank_position = restriction_rate_by_rank_position(corpus);
  return report;
}

inline OrderedJson heuristic_report_to_json(const HeuristicReport& report) {
  OrderedJson out;
  OrderedJson curve = OrderedJson::array();
  for (const auto& [k, precision] : report.avg_users_precision) {
    curve.push_back({{"k", k}, {"precision", precision}});
  }
  out["avg_users_precision"] = std::move(curve);
  OrderedJson by_value;
  for (const auto& [score, precision] : report.precision_by_cs_value) {
    by_value[std::to_string(score)] = precision;
  }
  out["restriction_precision_by_cs_value"] = std::move(by_value);
  OrderedJson by_position;
  for (const auto& [position, rate] : report.rate_by_rank_position) {
    by_position[std::to_string(position)] = rate;
  }
  out["restriction_rate_by_rank_position"] = std::move(by_position);
  return out;
}

struct ReproduceOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out_dir;
  int threads = 1;
  std::size_t users = 300;
};

namespace pipeline_detail {

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::IoError, "cannot write " + path.string());
  }
  out << content;
}

}  // namespace pipeline_detail

// Desk-scale analogue of the full experiment: one seeded corpus, the three
// datasets (raw and balanced), a cross-validation table over all eight
// classifier families, rotation-forest precision curves, per-dataset feature
// rankings and the heuristic diagnostics.
inline void run_reproduce(const ReproduceOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  fs::create_directories(options.out_dir / "datasets");
  fs::create_directories(options.out_dir / "balanced");
  fs::create_directories(options.out_dir / "reports");

  PopulationConfig config;
  config.n_users = options.users;
  config.seed = options.seed;
  const std::vector<LinkRecord> corpus =
      generate_population(config, options.threads);
  {
    std::ostringstream out;
    write_link_records(out, corpus);
    pipeline_detail::write_file(options.out_dir / "corpus.csv", out.str());
  }

  const std::vector<FeatureVector> features = extract_all_features(corpus);
  const LinkPartition partition = partition_links(corpus);

  std::map<DatasetKind, LabeledDataset> balanced;
  for (std::size_t i = 0; i < kAllDatasetKinds.size(); ++i) {
    const DatasetKind kind = kAllDatasetKinds[i];
    const LabeledDataset dataset = build_dataset(kind, partition, features);
    {
      std::ostringstream out;
      write_dataset_csv(out, dataset.vectors);
      pipeline_detail::write_file(options.out_dir / "datasets" /
                                      (std::string(dataset_kind_name(kind)) +
                                       ".csv"),
                                  out.str());
    }
    balanced[kind] =
        balance_undersample(dataset, derive_seed(options.seed, 1000 + i));
    {
      std::ostringstream out;
      write_dataset_csv(out, balanced[kind].vectors);
      pipeline_detail::write_file(options.out_dir / "balanced" /
                                      (std::string(dataset_kind_name(kind)) +
                                       ".csv"),
                                  out.str());
    }
  }

  CvTable table;
  for (std::size_t f = 0; f < kAllFamilies.size(); ++f) {
    for (std::size_t d = 0; d < kAllDatasetKinds.size(); ++d) {
      const Family family = kAllFamilies[f];
      const DatasetKind kind = kAllDatasetKinds[d];
      ClassifierSpec spec;
      spec.family = family;
      spec.seed = derive_seed(options.seed, 2000 + f * 16 + d);
      table[family][kind] =
          stratified_cv(spec, balanced[kind], 10,
                        derive_seed(options.seed, 3000 + f * 16 + d),
                        options.threads);
    }
  }
  pipeline_detail::write_file(options.out_dir / "reports" / "cv_report.json",
                              cv_table_to_json(table).dump(2) + "\n");
  pipeline_detail::write_file(options.out_dir / "reports" / "cv_report.txt",
                              cv_table_to_text(table));

  OrderedJson rankings;
  std::string rankings_text;
  for (DatasetKind kind : kAllDatasetKinds) {
    const FeatureRanking ranking = information_gain_ranking(balanced[kind]);
    rankings[dataset_kind_name(kind)] = ranking_to_json(ranking);
    rankings_text += std::string("== ") + dataset_kind_name(kind) + " ==\n";
    rankings_text += ranking_to_text(ranking);
    rankings_text += "\n";
  }
  pipeline_detail::write_file(
      options.out_dir / "reports" / "feature_ranking.json",
      rankings.dump(2) + "\n");
  pipeline_detail::write_file(
      options.out_dir / "reports" / "feature_ranking.txt", rankings_text);

  for (std::size_t d = 0; d < kAllDatasetKinds.size(); ++d) {
    const DatasetKind kind = kAllDatasetKinds[d];
    const std::size_t test_size = balanced[kind].vectors.size() / 3;
    std::vector<std::size_t> k_list;
    for (std::size_t k : {1u, 2u, 5u, 10u, 20u, 50u, 100u, 200u, 500u}) {
      if (k <= test_size) k_list.push_back(k);
    }
    if (k_list.empty()) continue;
    ClassifierSpec spec;
    spec.family = Family::RotationForest;
    spec.seed = derive_seed(options.seed, 4000 + d);
    const PrecisionCurve curve = precision_at_k_split(
        spec, balanced[kind], k_list, derive_seed(options.seed, 5000 + d),
        options.threads);
    pipeline_detail::write_file(
        options.out_dir / "reports" /
            ("precision_at_k_" + std::string(dataset_kind_name(kind)) + ".csv"),
        curve_to_csv(curve));
  }

  const std::vector<std::size_t> heuristic_k = {1, 2, 5, 10, 20, 50, 100};
  pipeline_detail::write_file(
      options.out_dir / "reports" / "heuristic.json",
      heuristic_report_to_json(heuristic_report(corpus, heuristic_k)).dump(2) +
          "\n");
}

}  // namespace linktrust
