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
// Command-line entry points for the link-trust engine: synthetic corpora,
// heuristic scoring, dataset construction, training, evaluation, privacy
// reports, the scoring service and the end-to-end reproduce pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linktrust/csv.hpp"
#include "linktrust/pipeline.hpp"
#include "linktrust/privacy.hpp"
#include "linktrust/service.hpp"

namespace {

using namespace linktrust;

std::vector<LinkRecord> load_links(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error(Errc::IoError, "cannot read " + path);
  return parse_link_records(input);
}

std::vector<FeatureVector> load_dataset(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error(Errc::IoError, "cannot read " + path);
  return read_dataset_csv(input);
}

std::vector<PrivacySnapshot> load_snapshots(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error(Errc::IoError, "cannot read " + path);
  return parse_privacy_snapshots(input);
}

ClassifierModel load_model(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error(Errc::IoError, "cannot read " + path);
  OrderedJson parsed;
  input >> parsed;
  return model_from_json(parsed);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << content;
}

// Flat key-value config files: '#' comments, 'key = value' lines.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error(Errc::IoError, "cannot read " + path);
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto trim = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      const auto end = s.find_last_not_of(" \t\r");
      return begin == std::string::npos ? std::string()
                                        : s.substr(begin, end - begin + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::InvalidConfig, path + ":" +
                                           std::to_string(line_number) +
                                           ": expected key = value");
    }
    values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return values;
}

double config_double(const std::map<std::string, std::string>& config,
                     const std::string& key, double fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw Error(Errc::InvalidConfig, "bad numeric value for '" + key + "'");
  }
}

PopulationConfig population_from_config(
    const std::map<std::string, std::string>& config) {
  PopulationConfig population;
  population.n_users = static_cast<std::size_t>(
      config_double(config, "n_users", static_cast<double>(population.n_users)));
  population.friends_per_user =
      config_double(config, "friends_per_user", population.friends_per_user);
  population.fake_fraction =
      config_double(config, "fake_fraction", population.fake_fraction);
  population.alpha_restrict_fraction = config_double(
      config, "alpha_restrict_fraction", population.alpha_restrict_fraction);
  population.seed = static_cast<std::uint64_t>(
      config_double(config, "seed", static_cast<double>(population.seed)));
  const char* class_keys[3] = {"genuine_unrestricted", "fake",
                               "genuine_restricted"};
  for (int c = 0; c < 3; ++c) {
    const std::string prefix = std::string(class_keys[c]) + ".";
    ClassMeans& means = population.means[c];
    means.chat_messages =
        config_double(config, prefix + "chat_messages", means.chat_messages);
    means.common_friends =
        config_double(config, prefix + "common_friends", means.common_friends);
    means.common_groups =
        config_double(config, prefix + "common_groups", means.common_groups);
    means.common_posts =
        config_double(config, prefix + "common_posts", means.common_posts);
    means.tagged_photos =
        config_double(config, prefix + "tagged_photos", means.tagged_photos);
    means.tagged_videos =
        config_double(config, prefix + "tagged_videos", means.tagged_videos);
    means.friend_degree =
        config_double(config, prefix + "friend_degree", means.friend_degree);
    population.private_profile_prob[c] =
        config_double(config, prefix + "private_profile_prob",
                      population.private_profile_prob[c]);
    population.family_prob[c] = config_double(config, prefix + "family_prob",
                                              population.family_prob[c]);
  }
  return population;
}

Family family_or_throw(const std::string& name) {
  const auto family = family_from_name(name);
  if (!family) {
    throw Error(Errc::InvalidArgument, "unknown classifier family '" + name +
                                           "'; expected one of one-r, "
                                           "decision-tree, k-nearest, "
                                           "naive-bayes, bagging, "
                                           "ada-boost-m1, rotation-forest, "
                                           "random-forest");
  }
  return *family;
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> k_list;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    k_list.push_back(static_cast<std::size_t>(std::stoull(token)));
  }
  if (k_list.empty()) {
    throw Error(Errc::InvalidArgument, "empty k list");
  }
  return k_list;
}

LabeledDataset dataset_from_vectors(std::vector<FeatureVector> vectors) {
  LabeledDataset dataset;
  dataset.vectors = std::move(vectors);
  return dataset;
}

int run(int argc, char** argv) {
  CLI::App app{"Social-graph link-trust engine"};
  app.require_subcommand(1);

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "Generate a synthetic link corpus");
  std::string synth_config_path, synth_out;
  std::uint64_t synth_seed = 0;
  bool synth_seed_set = false;
  int synth_threads = 1;
  std::size_t synth_users = 0;
  synth->add_option("--config", synth_config_path, "Flat key-value config");
  synth->add_option("--seed", synth_seed, "Generator seed")
      ->each([&](const std::string&) { synth_seed_set = true; });
  synth->add_option("--out", synth_out, "Output CSV path")->required();
  synth->add_option("--users", synth_users, "Override the user count");
  synth->add_option("--threads", synth_threads, "Worker threads");

  // --- score ---
  auto* score = app.add_subcommand(
      "score", "Heuristic ranking and recommendations per owner");
  std::string score_links, score_model;
  score->add_option("--links", score_links, "Links CSV")->required();
  score->add_option("--model", score_model,
                    "Optional model JSON for probabilities");

  // --- build-datasets ---
  auto* build = app.add_subcommand("build-datasets",
                                   "Emit the three labeled datasets as CSV");
  std::string build_links, build_out_dir;
  std::uint64_t build_balance_seed = 0;
  bool build_balance = false;
  build->add_option("--links", build_links, "Links CSV")->required();
  build->add_option("--out-dir", build_out_dir, "Output directory")->required();
  build
      ->add_option("--balance-seed", build_balance_seed,
                   "Also emit balanced datasets with this seed")
      ->each([&](const std::string&) { build_balance = true; });

  // --- train ---
  auto* train = app.add_subcommand("train", "Fit a classifier and serialize it");
  std::string train_dataset, train_family = "rotation-forest", train_out;
  std::string train_config;
  ClassifierSpec train_spec;
  int train_threads = 1;
  train->add_option("--dataset", train_dataset, "Dataset CSV")->required();
  train->add_option("--family", train_family, "Classifier family");
  train->add_option("--min-leaf", train_spec.min_leaf,
                    "Minimum instances per leaf");
  train->add_option("--k", train_spec.k, "Neighbours for k-nearest");
  train->add_option("--iterations", train_spec.iterations,
                    "Ensemble iterations");
  train->add_option("--seed", train_spec.seed, "Training seed");
  train->add_option("--threads", train_threads, "Worker threads");
  train->add_option("--config", train_config,
                    "Flat key-value config with classifier fields");
  train->add_option("--out", train_out, "Model JSON path")->required();

  // --- evaluate ---
  auto* evaluate = app.add_subcommand("evaluate", "Run an evaluation protocol");
  evaluate->require_subcommand(1);
  std::string eval_dataset, eval_links, eval_family = "rotation-forest";
  std::string eval_json_out, eval_csv_out, eval_k_list = "1,2,5,10,20,50,100";
  ClassifierSpec eval_spec;
  std::uint64_t eval_seed = 0;
  int eval_folds = 10;
  int eval_threads = 1;
  auto add_classifier_options = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", eval_dataset, "Dataset CSV")->required();
    cmd->add_option("--family", eval_family, "Classifier family");
    cmd->add_option("--min-leaf", eval_spec.min_leaf, "Minimum leaf size");
    cmd->add_option("--k", eval_spec.k, "Neighbours for k-nearest");
    cmd->add_option("--iterations", eval_spec.iterations, "Ensemble iterations");
    cmd->add_option("--model-seed", eval_spec.seed, "Training seed");
    cmd->add_option("--seed", eval_seed, "Protocol seed");
    cmd->add_option("--threads", eval_threads, "Worker threads");
    cmd->add_option("--json-out", eval_json_out, "Write the JSON report here");
  };
  auto* eval_cv = evaluate->add_subcommand("cv", "Stratified cross-validation");
  add_classifier_options(eval_cv);
  eval_cv->add_option("--folds", eval_folds, "Fold count");
  auto* eval_prec = evaluate->add_subcommand(
      "prec-at-k", "2/3-1/3 split precision at k");
  add_classifier_options(eval_prec);
  eval_prec->add_option("--k-list", eval_k_list, "Comma-separated k values");
  eval_prec->add_option("--csv-out", eval_csv_out, "Write the curve CSV here");
  auto* eval_users = evaluate->add_subcommand(
      "avg-users-prec", "Leave-one-user-out average users precision at k");
  add_classifier_options(eval_users);
  eval_users->add_option("--k-list", eval_k_list, "Comma-separated k values");
  eval_users->add_option("--csv-out", eval_csv_out, "Write the curve CSV here");
  auto* eval_heuristic =
      evaluate->add_subcommand("heuristic", "Connection-Strength diagnostics");
  eval_heuristic->add_option("--links", eval_links, "Links CSV")->required();
  eval_heuristic->add_option("--k-list", eval_k_list,
                             "Comma-separated k values");
  eval_heuristic->add_option("--json-out", eval_json_out,
                             "Write the JSON report here");

  // --- rank-features ---
  auto* rank = app.add_subcommand("rank-features",
                                  "Information-gain feature ranking");
  std::string rank_dataset, rank_json_out;
  rank->add_option("--dataset", rank_dataset, "Dataset CSV")->required();
  rank->add_option("--json-out", rank_json_out, "Write the JSON report here");

  // --- privacy ---
  auto* privacy = app.add_subcommand("privacy", "Privacy-snapshot reports");
  std::string privacy_snapshots, privacy_report = "settings", privacy_json_out;
  double privacy_window_days = 7.0;
  privacy->add_option("--snapshots", privacy_snapshots, "Snapshots CSV")
      ->required();
  privacy
      ->add_option("--report", privacy_report,
                   "One of: apps, day-after, install-rate, settings, changes")
      ->required();
  privacy->add_option("--window-days", privacy_window_days,
                      "Window for install-rate");
  privacy->add_option("--json-out", privacy_json_out,
                      "Write the JSON report here");

  // --- reproduce ---
  auto* reproduce = app.add_subcommand(
      "reproduce", "Full pipeline: synth, datasets, training, reports");
  ReproduceOptions reproduce_options;
  std::string reproduce_out_dir;
  reproduce->add_option("--seed", reproduce_options.seed, "Pipeline seed");
  reproduce->add_option("--out-dir", reproduce_out_dir, "Output directory")
      ->required();
  reproduce->add_option("--threads", reproduce_options.threads,
                        "Worker threads");
  reproduce->add_option("--users", reproduce_options.users,
                        "Synthetic population size");

  // --- serve ---
  auto* serve = app.add_subcommand("serve", "Run the scoring service");
  std::string serve_host = "127.0.0.1", serve_model;
  int serve_port = 8080;
  std::size_t serve_cache = 10000;
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port");
  serve->add_option("--model", serve_model, "Optional model JSON");
  serve->add_option("--cache-capacity", serve_cache, "LRU cache entries");

  CLI11_PARSE(app, argc, argv);

  if (*synth) {
    PopulationConfig config;
    if (!synth_config_path.empty()) {
      config = population_from_config(parse_config_file(synth_config_path));
    }
    if (synth_seed_set) config.seed = synth_seed;
    if (synth_users > 0) config.n_users = synth_users;
    const auto corpus = generate_population(config, synth_threads);
    std::ostringstream out;
    write_link_records(out, corpus);
    write_text_file(synth_out, out.str());
    std::cout << "wrote " << corpus.size() << " links to " << synth_out
              << "\n";
    return 0;
  }

  if (*score) {
    const auto corpus = load_links(score_links);
    std::optional<ClassifierModel> model;
    if (!score_model.empty()) model = load_model(score_model);
    OrderedJson out = OrderedJson::array();
    for (const auto& [owner, indices] : group_indices_by_owner(corpus)) {
      std::vector<LinkRecord> links;
      links.reserve(indices.size());
      for (std::size_t i : indices) links.push_back(corpus[i]);
      OrderedJson entry;
      entry["owner"] = owner.value;
      OrderedJson ranked = OrderedJson::array();
      for (const ScoredFriend& f : rank_friends(links)) {
        ranked.push_back({{"friend", f.friend_id.value},
                          {"score", f.score},
                          {"rank_position", f.rank_position}});
      }
      entry["ranked"] = ranked;
      OrderedJson recommended = OrderedJson::array();
      const std::size_t count = recommendation_count(links.size());
      for (std::size_t i = 0; i < count; ++i) {
        recommended.push_back(ranked[i]);
      }
      entry["recommended"] = std::move(recommended);
      if (model) {
        const UserAggregates agg = compute_user_aggregates(links);
        OrderedJson probabilities;
        for (const LinkRecord& link : links) {
          probabilities[link.friend_id.value] =
              model->predict_proba(extract_features(link, agg));
        }
        entry["probabilities"] = std::move(probabilities);
      }
      out.push_back(std::move(entry));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*build) {
    const auto corpus = load_links(build_links);
    const auto features = extract_all_features(corpus);
    const auto partition = partition_links(corpus);
    std::filesystem::create_directories(build_out_dir);
    for (std::size_t i = 0; i < kAllDatasetKinds.size(); ++i) {
      const DatasetKind kind = kAllDatasetKinds[i];
      const LabeledDataset dataset = build_dataset(kind, partition, features);
      std::ostringstream out;
      write_dataset_csv(out, dataset.vectors);
      write_text_file(build_out_dir + "/" + dataset_kind_name(kind) + ".csv",
                      out.str());
      if (build_balance) {
        const LabeledDataset balanced = balance_undersample(
            dataset, derive_seed(build_balance_seed, i));
        std::ostringstream balanced_out;
        write_dataset_csv(balanced_out, balanced.vectors);
        write_text_file(build_out_dir + "/balanced_" +
                            dataset_kind_name(kind) + ".csv",
                        balanced_out.str());
      }
    }
    return 0;
  }

  if (*train) {
    ClassifierSpec spec = train_spec;
    if (!train_config.empty()) {
      const auto config = parse_config_file(train_config);
      if (config.count("family")) train_family = config.at("family");
      spec.min_leaf = static_cast<int>(
          config_double(config, "min_leaf", spec.min_leaf));
      spec.k = static_cast<int>(config_double(config, "k", spec.k));
      spec.iterations = static_cast<int>(
          config_double(config, "iterations", spec.iterations));
      spec.seed = static_cast<std::uint64_t>(
          config_double(config, "seed", static_cast<double>(spec.seed)));
    }
    spec.family = family_or_throw(train_family);
    const LabeledDataset dataset =
        dataset_from_vectors(load_dataset(train_dataset));
    const ClassifierModel model = fit(spec, dataset, train_threads);
    write_text_file(train_out, model.to_json().dump(2) + "\n");
    std::cout << "wrote model to " << train_out << "\n";
    return 0;
  }

  if (*evaluate) {
    if (*eval_heuristic) {
      const auto corpus = load_links(eval_links);
      const auto k_list = parse_k_list(eval_k_list);
      const HeuristicReport report = heuristic_report(corpus, k_list);
      const OrderedJson json = heuristic_report_to_json(report);
      std::string text = "k     cs_avg_precision\n";
      for (const auto& [k, precision] : report.avg_users_precision) {
        char line[64];
        std::snprintf(line, sizeof(line), "%-5zu %.4f\n", k, precision);
        text += line;
      }
      std::cout << text;
      if (!eval_json_out.empty()) {
        write_text_file(eval_json_out, json.dump(2) + "\n");
      }
      return 0;
    }
    ClassifierSpec spec = eval_spec;
    spec.family = family_or_throw(eval_family);
    const LabeledDataset dataset =
        dataset_from_vectors(load_dataset(eval_dataset));
    if (*eval_cv) {
      const CvReport report =
          stratified_cv(spec, dataset, eval_folds, eval_seed, eval_threads);
      std::cout << cv_report_to_text(report);
      if (!eval_json_out.empty()) {
        write_text_file(eval_json_out, cv_report_to_json(report).dump(2) + "\n");
      }
      return 0;
    }
    const auto k_list = parse_k_list(eval_k_list);
    const PrecisionCurve curve =
        *eval_prec ? precision_at_k_split(spec, dataset, k_list, eval_seed,
                                          eval_threads)
                   : avg_users_precision_at_k(spec, dataset, k_list, eval_seed,
                                              eval_threads);
    std::cout << curve_to_csv(curve);
    if (!eval_csv_out.empty()) {
      write_text_file(eval_csv_out, curve_to_csv(curve));
    }
    if (!eval_json_out.empty()) {
      write_text_file(eval_json_out, curve_to_json(curve).dump(2) + "\n");
    }
    return 0;
  }

  if (*rank) {
    const LabeledDataset dataset =
        dataset_from_vectors(load_dataset(rank_dataset));
    const FeatureRanking ranking = information_gain_ranking(dataset);
    std::cout << ranking_to_text(ranking);
    if (!rank_json_out.empty()) {
      write_text_file(rank_json_out, ranking_to_json(ranking).dump(2) + "\n");
    }
    return 0;
  }

  if (*privacy) {
    const auto snapshots = load_snapshots(privacy_snapshots);
    OrderedJson json;
    std::string text;
    char line[160];
    if (privacy_report == "apps") {
      const AppCountSummary summary = app_count_summary(snapshots);
      json["users"] = summary.users;
      json["mean_first_count"] = summary.mean_first_count;
      json["fraction_less_than_10"] = summary.fraction_less(10);
      json["fraction_at_least_40"] = summary.fraction_at_least(40);
      json["fraction_greater_than_100"] = summary.fraction_greater(100);
      json["histogram"] = summary.histogram;
      std::snprintf(line, sizeof(line),
                    "users %zu  mean %.3f  <10 %.4f  >=40 %.4f  >100 %.4f\n",
                    summary.users, summary.mean_first_count,
                    summary.fraction_less(10), summary.fraction_at_least(40),
                    summary.fraction_greater(100));
      text += line;
    } else if (privacy_report == "day-after") {
      const DayAfterReport report = day_after_removal_report(snapshots);
      json["eligible_users"] = report.entries.size();
      json["ineligible_users"] = report.ineligible_users;
      json["removed_users"] = report.removed_users();
      json["added_users"] = report.added_users();
      json["unchanged_users"] = report.unchanged_users();
      json["mean_removal_ratio"] = report.mean_removal_ratio();
      std::snprintf(line, sizeof(line),
                    "eligible %zu  removed %zu  added %zu  unchanged %zu  "
                    "mean removal ratio %.4f\n",
                    report.entries.size(), report.removed_users(),
                    report.added_users(), report.unchanged_users(),
                    report.mean_removal_ratio());
      text += line;
    } else if (privacy_report == "install-rate") {
      const auto window =
          static_cast<std::int64_t>(privacy_window_days * 86400.0);
      const InstallRateReport report = install_rate_report(snapshots, window);
      json["users_with_two_snapshots"] = report.users_with_two_snapshots;
      json["increased_users"] = report.entries.size();
      json["median_rate"] = report.median_rate();
      json["mean_rate"] = report.mean_rate();
      std::snprintf(line, sizeof(line),
                    "increased %zu of %zu  median %.4f  mean %.4f per window\n",
                    report.entries.size(), report.users_with_two_snapshots,
                    report.median_rate(), report.mean_rate());
      text += line;
    } else if (privacy_report == "settings") {
      const SettingsDistribution distribution =
          settings_distribution(snapshots);
      json["users"] = distribution.users;
      for (int s = 0; s < kAudienceSettingCount; ++s) {
        OrderedJson fractions;
        for (const auto& [level, fraction] : distribution.fractions[s]) {
          fractions[audience_token(level)] = fraction;
        }
        json[audience_setting_name(s)] = std::move(fractions);
      }
      std::snprintf(line, sizeof(line), "%-20s", "audience");
      text += line;
      for (int s = 0; s < kAudienceSettingCount; ++s) {
        std::snprintf(line, sizeof(line), " %23s", audience_setting_name(s));
        text += line;
      }
      text += "\n";
      for (AudienceLevel level :
           {AudienceLevel::Everyone, AudienceLevel::Friends,
            AudienceLevel::FriendsOfFriends, AudienceLevel::NoOne,
            AudienceLevel::Custom}) {
        std::snprintf(line, sizeof(line), "%-20s", audience_token(level));
        text += line;
        for (int s = 0; s < kAudienceSettingCount; ++s) {
          const auto it = distribution.fractions[s].find(level);
          if (it == distribution.fractions[s].end()) {
            std::snprintf(line, sizeof(line), " %23s", "-");
          } else {
            std::snprintf(line, sizeof(line), " %22.2f%%", it->second * 100.0);
          }
          text += line;
        }
        text += "\n";
      }
    } else if (privacy_report == "changes") {
      const auto changes = settings_change_detection(snapshots);
      std::size_t changed = 0, reverted = 0;
      OrderedJson users = OrderedJson::array();
      for (const SettingsChange& change : changes) {
        changed += change.changed ? 1 : 0;
        reverted += change.reverted_to_less_restrictive ? 1 : 0;
        users.push_back({{"user", change.user.value},
                         {"changed", change.changed},
                         {"reverted_to_less_restrictive",
                          change.reverted_to_less_restrictive}});
      }
      json["evaluated_users"] = changes.size();
      json["changed_users"] = changed;
      json["reverted_users"] = reverted;
      json["users"] = std::move(users);
      std::snprintf(line, sizeof(line),
                    "evaluated %zu  changed %zu  reverted %zu\n",
                    changes.size(), changed, reverted);
      text += line;
    } else {
      throw Error(Errc::InvalidArgument,
                  "unknown privacy report '" + privacy_report + "'");
    }
    std::cout << text;
    if (!privacy_json_out.empty()) {
      write_text_file(privacy_json_out, json.dump(2) + "\n");
    }
    return 0;
  }

  if (*reproduce) {
    reproduce_options.out_dir = reproduce_out_dir;
    run_reproduce(reproduce_options);
    std::cout << "wrote reports to " << reproduce_out_dir << "\n";
    return 0;
  }

  if (*serve) {
    std::optional<ClassifierModel> model;
    if (!serve_model.empty()) model = load_model(serve_model);
    ScoringService service(std::move(model), serve_cache);
    std::cout << "listening on " << serve_host << ":" << serve_port << "\n";
    if (!service.listen(serve_host, serve_port)) {
      throw Error(Errc::IoError, "cannot bind " + serve_host + ":" +
                                     std::to_string(serve_port));
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const linktrust::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
