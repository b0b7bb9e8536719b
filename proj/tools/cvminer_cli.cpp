/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvminer/cvminer.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  cvm_status status;
};

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  cvm_string_free(s);
  return out;
}

void check(cvm_status st) {
  if (st != CVM_OK) throw Failure{st};
}

class Store {
 public:
  explicit Store(const std::string& root) { check(cvm_store_open(root.c_str(), &handle_)); }
  ~Store() { cvm_store_close(handle_); }
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;
  cvm_store* get() const { return handle_; }

 private:
  cvm_store* handle_ = nullptr;
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s;
}

void write_text(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cvminer: resume mining engine"};
  app.require_subcommand(1);
  std::string store_dir = "corpus";
  app.add_option("--store", store_dir, "Corpus directory (versioned snapshots)");

  auto* ingest = app.add_subcommand("ingest", "Parse a directory of *.txt resumes into a new corpus version");
  std::string raw_dir, lexicon_dir, rules_file, exceptions_file, as_of;
  ingest->add_option("dir", raw_dir, "Directory of raw resumes")->required()->check(CLI::ExistingDirectory);
  ingest->add_option("--lexicon", lexicon_dir, "Lexicon directory")->check(CLI::ExistingDirectory);
  ingest->add_option("--rules", rules_file, "Rank rules (pattern, rank, priority)")->check(CLI::ExistingFile);
  ingest->add_option("--exceptions", exceptions_file, "Rank exceptions (pattern, context, rank)")
      ->check(CLI::ExistingFile);
  ingest->add_option("--as-of", as_of, "Date closing ongoing records (YYYY-MM-DD), default today");

  auto* features = app.add_subcommand("features", "Print the time-share vector and career length");
  std::string feature_id;
  bool features_json = false;
  features->add_option("id", feature_id, "Resume id")->required();
  features->add_flag("--json", features_json, "Print JSON");

  auto* train = app.add_subcommand("train", "Store expert labels and train the pattern model");
  std::string labels_file;
  train->add_option("--labels", labels_file, "Lines id<TAB>pattern")->required()->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "Print predicted patterns");
  std::string classify_id;
  bool classify_all = false;
  auto* all_flag = classify->add_flag("--all", classify_all, "Every resume");
  classify->add_option("id", classify_id, "Resume id")->excludes(all_flag);

  auto* mine = app.add_subcommand("mine", "Mine explicit relations and write edges.tsv");
  std::size_t min_support = 2;
  std::string edges_out;
  mine->add_option("--min-support", min_support, "Minimum number of shared organizations")
      ->required()
      ->check(CLI::PositiveNumber);
  mine->add_option("--out", edges_out, "Also write edges.tsv here");

  auto* validate = app.add_subcommand("validate", "Find the owner of an unknown resume and list differences");
  std::string validate_file;
  bool validate_json = false;
  validate->add_option("file", validate_file, "Raw resume text")->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", validate_json, "Print JSON");

  auto* mobility = app.add_subcommand("mobility", "Write mobility map snapshots");
  std::string at;
  std::vector<std::string> animate;
  std::string mobility_out = ".";
  auto* at_opt = mobility->add_option("--at", at, "Snapshot date");
  auto* animate_opt = mobility->add_option("--animate", animate, "FROM TO STEPS")->expected(3);
  at_opt->excludes(animate_opt);
  mobility->add_option("--out", mobility_out, "Output directory");

  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic corpus with ground truth");
  std::size_t gen_n = 300;
  std::uint64_t gen_seed = 1;
  double gen_sep = 0.5;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of resumes")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--separation", gen_sep, "Class separation in [0, 1)")->check(CLI::Range(0.0, 0.999999));
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* serve = app.add_subcommand("serve", "Start the HTTP API");
  std::string addr;
  serve->add_option("--addr", addr, "host:port, default $CVMINER_ADDR or 127.0.0.1:8080");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*mobility && at.empty() && animate.empty()) {
    std::cerr << "mobility: give --at or --animate\n";
    return 2;
  }

  try {
    if (*gen) {
      check(cvm_generate_synthetic(gen_out.c_str(), gen_n, gen_seed, gen_sep));
      std::cout << "wrote " << gen_n << " resumes to " << gen_out << "\n";
      return 0;
    }

    Store store(store_dir);
    if (*ingest) {
      Json r = Json::parse(take([&] {
        char* out = nullptr;
        check(cvm_ingest_dir(store.get(), raw_dir.c_str(), opt(lexicon_dir), opt(rules_file), opt(exceptions_file),
                             opt(as_of), &out));
        return out;
      }()));
      for (const auto& [id, ws] : r["warnings"].items())
        for (const auto& w : ws) std::cout << "warning " << id << ": " << w.get<std::string>() << "\n";
      for (const auto& [id, msg] : r["failed"].items()) std::cout << "failed " << id << ": " << msg.get<std::string>() << "\n";
      std::cout << "version " << r["version"] << ": " << r["ingested"].size() << " ingested, " << r["failed"].size()
                << " failed (as of " << r["as_of"].get<std::string>() << ")\n";
    } else if (*features) {
      char* out = nullptr;
      check(cvm_features(store.get(), feature_id.c_str(), &out));
      Json r = Json::parse(take(out));
      if (features_json) {
        std::cout << r.dump(2) << "\n";
      } else {
        std::cout << "r = {";
        for (std::size_t i = 0; i < r["r"].size(); ++i) std::cout << (i ? ", " : "") << fixed(r["r"][i].get<double>(), 2);
        std::cout << "}\nT = " << fixed(r["total_years"].get<double>(), 2) << "\n";
      }
    } else if (*train) {
      char* out = nullptr;
      check(cvm_train_labels(store.get(), labels_file.c_str(), &out));
      Json r = Json::parse(take(out));
      std::cout << "version " << r["version"] << ": model trained on " << r["labels"] << " labels\n";
      for (const auto& c : r["model"]["classes"])
        std::cout << "  " << c["label"].get<std::string>() << " prior " << fixed(c["prior"].get<double>(), 4) << "\n";
    } else if (*classify) {
      if (!classify_all && classify_id.empty()) {
        std::cerr << "classify: give an id or --all\n";
        return 2;
      }
      char* out = nullptr;
      check(cvm_classify(store.get(), classify_all ? nullptr : classify_id.c_str(), &out));
      Json r = Json::parse(take(out));
      for (const auto& c : r["classifications"]) {
        std::cout << c["id"].get<std::string>() << "\t"
                  << (c["predicted"].is_null() ? std::string("-") : c["predicted"].get<std::string>());
        if (!c["expert"].is_null()) std::cout << "\t(expert: " << c["expert"].get<std::string>() << ")";
        std::cout << "\n";
      }
    } else if (*mine) {
      char* out = nullptr;
      check(cvm_mine(store.get(), min_support, opt(edges_out), &out));
      Json r = Json::parse(take(out));
      for (const auto& fs : r["frequent_sets"]) {
        std::cout << "set";
        for (const auto& m : fs["members"]) std::cout << " " << m.get<std::string>();
        std::cout << "\tsupport " << fs["support"] << "\n";
      }
      auto where = edges_out.empty() ? (std::filesystem::path(store_dir) / r["version"].dump() / "edges.tsv").string()
                                     : edges_out;
      std::cout << "version " << r["version"] << ": " << r["edges"].size() << " edges written to " << where << "\n";
    } else if (*validate) {
      std::ifstream in(validate_file, std::ios::binary);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      char* out = nullptr;
      check(cvm_validate_text(store.get(), text.c_str(), &out));
      Json r = Json::parse(take(out));
      if (validate_json) {
        std::cout << r.dump(2) << "\n";
      } else {
        std::cout << "best match: " << r["best"].get<std::string>() << " (" << r["percent"] << "%"
                  << (r["confident"].get<bool>() ? "" : ", no confident match") << ")\n";
        for (const auto& c : r["candidates"])
          std::cout << "  candidate " << c["id"].get<std::string>() << " " << fixed(c["degree"].get<double>(), 4) << "\n";
        for (const auto& m : r["mismatches"])
          std::cout << "  " << m["kind"].get<std::string>() << " " << m["path"].get<std::string>() << ": '"
                    << m["test_value"].get<std::string>() << "' vs '" << m["standard_value"].get<std::string>() << "'\n";
      }
    } else if (*mobility) {
      std::filesystem::create_directories(mobility_out);
      char* out = nullptr;
      if (!at.empty()) {
        check(cvm_mobility_at(store.get(), at.c_str(), &out));
        Json r = Json::parse(take(out));
        auto file = std::filesystem::path(mobility_out) / ("mobility-" + at + ".json");
        write_text(file, r.dump(2) + "\n");
        std::cout << r["nodes"].size() << " nodes, " << r["events"].size() << " events -> " << file.string() << "\n";
      } else {
        int steps = std::stoi(animate[2]);
        check(cvm_mobility_animate(store.get(), animate[0].c_str(), animate[1].c_str(), steps, &out));
        Json r = Json::parse(take(out));
        for (const auto& frame : r["frames"]) {
          auto file = std::filesystem::path(mobility_out) / ("mobility-" + frame["timestamp"].get<std::string>() + ".json");
          write_text(file, frame.dump(2) + "\n");
          std::cout << frame["nodes"].size() << " nodes, " << frame["events"].size() << " events -> " << file.string()
                    << "\n";
        }
      }
    } else if (*serve) {
      std::cout << "serving corpus version " << cvm_store_version(store.get()) << "\n" << std::flush;
      check(cvm_serve(store.get(), opt(addr)));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << cvm_status_name(f.status) << ": " << cvm_last_error() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
