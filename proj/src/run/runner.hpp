#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "train/trainer.hpp"

namespace tlnid::run {

struct DatasetPaths {
    std::vector<std::string> base; // one or more UNSW-NB15 CSV files
    std::string base_descriptor;   // table schema for the base files
    std::string target_train;      // KDDTrain+
    std::string test_plus;         // KDDTest+
    std::string test_21;           // KDDTest-21
};

// One experiment definition. Every command takes the whole config; the seed
// is mandatory so nothing ever falls back to wall-clock entropy.
struct RunConfig {
    std::string run_name = "run";
    uint64_t seed = 0;
    std::string profile = "desk"; // "paper" or "desk"
    std::string out_dir = "out";
    std::string schema_path;
    DatasetPaths datasets;

    double base_train_fraction = 0.9;
    train::TrainConfig stage1;
    int stage1_folds = 10;
    train::TrainConfig stage2;
    bool reuse_frozen_features = true;
    std::string stage2_validation = "test-plus"; // or "none"
    float threshold = 0.5f;
    std::vector<int> sweep_grid = {1, 50};

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_json_text(const std::string& text);

    std::filesystem::path run_dir() const;
};

// Artifact names under run_dir().
inline constexpr const char* kPreprocState = "preproc.state";
inline constexpr const char* kBaseCheckpoint = "base.ckpt";
inline constexpr const char* kTlCheckpoint = "tl.ckpt";
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kCurvesCsv = "curves.csv";
inline constexpr const char* kSweepJson = "sweep.json";
inline constexpr const char* kSweepText = "sweep.txt";
inline constexpr const char* kStatsJson = "stats.json";

void run_preprocess(const RunConfig& cfg);
void run_train_base(const RunConfig& cfg);
void run_train_transfer(const RunConfig& cfg);
void run_evaluate(const RunConfig& cfg);
void run_sweep(const RunConfig& cfg);

} // namespace tlnid::run
