#pragma once

// On-disk formats: fault-model directories and JSON reports.
//
// A fault-model directory holds tp-0000.iolts, tp-0001.iolts, ... in the
// model format plus manifest.json:
//
//   {"m":..,"n":..,"levels":..,"limit":..,"truncated":..,"total_paths":..,
//    "inputs":[..],"outputs":[..],"files":[..],"paths":[[..],..]}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ioconf/conformance.hpp"
#include "ioconf/error.hpp"
#include "ioconf/iolts.hpp"
#include "ioconf/testgen.hpp"
#include "ioconf/testrun.hpp"

namespace ioconf {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

inline Iolts load_model(const std::filesystem::path& path,
                        const ParseOptions& opts = {}) {
  try {
    return parse_model(read_file(path), opts);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline std::string tp_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "tp-%04zu.iolts", index);
  return buf;
}

inline nlohmann::json manifest_json(const FaultModel& fm) {
  nlohmann::json j;
  j["m"] = fm.m;
  j["n"] = fm.n;
  j["levels"] = fm.levels;
  j["limit"] = fm.limit;
  j["truncated"] = fm.truncated;
  j["total_paths"] = fm.total_paths;
  j["inputs"] = fm.inputs;
  j["outputs"] = fm.outputs;
  j["files"] = nlohmann::json::array();
  j["paths"] = nlohmann::json::array();
  for (std::size_t i = 0; i < fm.tps.size(); ++i) {
    j["files"].push_back(tp_file_name(i));
    j["paths"].push_back(fm.tps[i].path);
  }
  return j;
}

inline void write_fault_model(const FaultModel& fm, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < fm.tps.size(); ++i) {
    Iolts tp = fm.tps[i].model;
    tp.comments = {"test purpose " + std::to_string(i) + ": " + join(fm.tps[i].path)};
    write_file(dir / tp_file_name(i), serialize_model(tp));
  }
  write_file(dir / "manifest.json", manifest_json(fm).dump(2) + "\n");
}

inline FaultModel read_fault_model(const std::filesystem::path& dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(dir / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "manifest.json").string() + ": " + e.what());
  }
  FaultModel fm;
  try {
    fm.m = j.at("m").get<std::size_t>();
    fm.n = j.at("n").get<std::size_t>();
    fm.levels = j.at("levels").get<std::size_t>();
    fm.limit = j.at("limit").get<std::size_t>();
    fm.truncated = j.at("truncated").get<bool>();
    fm.total_paths = j.at("total_paths").get<std::uint64_t>();
    fm.inputs = j.at("inputs").get<std::vector<std::string>>();
    fm.outputs = j.at("outputs").get<std::vector<std::string>>();
    const auto files = j.at("files").get<std::vector<std::string>>();
    const auto paths = j.at("paths").get<std::vector<Word>>();
    if (files.size() != paths.size())
      throw ParseError("manifest files and paths differ in length");
    for (std::size_t i = 0; i < files.size(); ++i) {
      TestPurpose tp;
      tp.model = load_model(dir / files[i], ParseOptions{.allow_reserved = true});
      tp.path = paths[i];
      auto pass = tp.model.state_index(kPass);
      auto fail = tp.model.state_index(kFail);
      if (!pass || !fail)
        throw ParseError(files[i] + ": test purpose lacks pass/fail states");
      tp.pass = *pass;
      tp.fail = *fail;
      fm.tps.push_back(std::move(tp));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "manifest.json").string() + ": " + e.what());
  }
  return fm;
}

inline nlohmann::json verdict_json(std::string_view relation, const Verdict& v) {
  nlohmann::json j;
  j["relation"] = relation;
  j["conforms"] = v.conforms;
  j["witnesses"] = v.witnesses;
  j["stats"] = {{"spec_states", v.stats.spec_states},
                {"iut_states", v.stats.iut_states},
                {"suite_states", v.stats.suite_states},
                {"desirable_states", v.stats.desirable_states},
                {"forbidden_states", v.stats.forbidden_states},
                {"alphabet_size", v.stats.alphabet_size},
                {"suite_bound", v.stats.suite_bound}};
  return j;
}

inline nlohmann::json run_report_json(const RunReport& r) {
  nlohmann::json j;
  j["overall"] = r.passed ? "pass" : "fail";
  j["tps"] = nlohmann::json::array();
  for (const auto& t : r.tps)
    j["tps"].push_back({{"id", t.id},
                        {"verdict", t.verdict == TpVerdict::pass ? "pass" : "fail"},
                        {"witness", t.witness},
                        {"incomplete", t.incomplete}});
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace ioconf
