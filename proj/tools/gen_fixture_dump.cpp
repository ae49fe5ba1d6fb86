// Deterministic generator for the bundled benchmark leaderboard dump.
//
// The emitted corpus realizes the documented fixture statistics:
//   - 8858 task-dataset combinations, 1106 of them with >= 10 entries
//   - records start in 1998; the 50th combination appears on 2009-04-15
//   - the first improvement happens on 2004-06-10
//   - ten annotation days carry exactly {1,1,3,15,28,10,9,30,43,11}
//     improving combinations, led by a designated example combination
//
// Everything is driven by one fixed-seed RNG, so reruns are byte-identical.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "asota/csv.hpp"
#include "asota/dates.hpp"

using asota::Date;

namespace {

constexpr std::size_t kTotalCombos = 8858;
constexpr std::size_t kMemberTarget = 1106; // combos with >= 10 entries

const Date kEndDate = Date::from_ymd(2024, 11, 23);
const Date kFirstImprovement = Date::from_ymd(2004, 6, 10);

struct AnnotationPlan {
    Date date;
    std::size_t improvers;
    const char* example_slug;
    const char* example_metric;
};

const AnnotationPlan kAnnotations[] = {
    {Date::from_ymd(2004, 6, 10), 1, "unsupervised-dependency-parsing-on-penn", "Score"},
    {Date::from_ymd(2006, 3, 18), 1, "video-quality-assessment-on-msu-sr-qa-dataset", "PSNR"},
    {Date::from_ymd(2008, 7, 22), 3, "atari-games-on-atari-2600-montezumas-revenge", "Score"},
    {Date::from_ymd(2010, 5, 14), 15, "atari-games-on-atari-2600-star-gunner", "Score"},
    {Date::from_ymd(2012, 9, 6), 28, "3d-human-pose-estimation-on-human36m", "MPJPE"},
    {Date::from_ymd(2014, 4, 23), 10, "atari-games-on-atari-2600-asteroids", "Score"},
    {Date::from_ymd(2016, 8, 17), 9, "image-generation-on-lsun-bedroom-256-x-256", "FID"},
    {Date::from_ymd(2018, 6, 29), 30, "code-generation-on-wikisql", "Score"},
    {Date::from_ymd(2020, 10, 8), 43, "machine-translation-on-wmt2016-english-german", "Score"},
    {Date::from_ymd(2022, 3, 11), 11, "medical-image-segmentation-on-etis", "Hausdorff Distance"},
};

const Date kSpecialSeeds[] = {
    Date::from_ymd(2002, 7, 14), Date::from_ymd(2004, 9, 1),  Date::from_ymd(2005, 3, 22),
    Date::from_ymd(2009, 6, 20), Date::from_ymd(2010, 7, 15), Date::from_ymd(2011, 5, 10),
    Date::from_ymd(2013, 8, 5),  Date::from_ymd(2015, 4, 18), Date::from_ymd(2016, 9, 12),
    Date::from_ymd(2018, 3, 25),
};

struct YearQuota {
    int year;
    int combos;  // total seeds this year, special seeds included
    int members; // synthetic combos promoted to the >= 10 set
};

const YearQuota kQuotas[] = {
    {1998, 2, 2},     {1999, 3, 3},     {2000, 3, 3},    {2001, 4, 0},    {2002, 4, 0},
    {2003, 5, 0},     {2004, 5, 0},     {2005, 6, 0},    {2006, 6, 0},    {2007, 6, 0},
    {2008, 5, 0},     {2009, 25, 8},    {2010, 38, 10},  {2011, 56, 12},  {2012, 80, 16},
    {2013, 120, 24},  {2014, 190, 36},  {2015, 300, 55}, {2016, 480, 80}, {2017, 700, 110},
    {2018, 950, 140}, {2019, 1250, 200},{2020, 1500, 210},{2021, 1600, 187},{2022, 1100, 0},
    {2023, 350, 0},   {2024, 70, 0},
};

enum class Family { fraction, percent, unbounded, loss };

struct MetricChoice {
    const char* name;
    Family family;
};

const MetricChoice kAccuracyMetrics[] = {
    {"Accuracy", Family::fraction},   {"Top 1 Accuracy", Family::fraction},
    {"Top 5 Accuracy", Family::fraction}, {"F1", Family::fraction},
    {"mAP", Family::fraction},        {"mIoU", Family::fraction},
    {"Dice", Family::fraction},       {"AUC", Family::fraction},
    {"Exact Match", Family::fraction},{"SSIM", Family::fraction},
    {"BLEU", Family::percent},        {"UAS", Family::percent},
    {"PSNR", Family::unbounded},      {"Score", Family::unbounded},
};

const MetricChoice kLossMetrics[] = {
    {"Perplexity", Family::loss}, {"Word Error Rate", Family::loss},
    {"FID", Family::loss},        {"MAE", Family::loss},
    {"RMSE", Family::loss},       {"Cross-Entropy", Family::loss},
    {"MPJPE", Family::loss},      {"Hausdorff Distance", Family::loss},
};

const char* kTasks[] = {
    "image-classification", "object-detection", "semantic-segmentation", "instance-segmentation",
    "question-answering", "machine-translation", "language-modelling", "text-classification",
    "named-entity-recognition", "sentiment-analysis", "speech-recognition", "pose-estimation",
    "depth-estimation", "image-generation", "super-resolution", "denoising",
    "action-recognition", "video-classification", "node-classification", "link-prediction",
    "graph-classification", "recommendation", "anomaly-detection", "time-series-forecasting",
    "optical-flow-estimation", "scene-text-recognition", "face-verification", "person-reidentification",
    "visual-question-answering", "image-captioning", "text-summarization", "relation-extraction",
    "dependency-parsing", "semantic-parsing", "code-generation", "speech-synthesis",
    "sound-event-detection", "medical-image-segmentation", "drug-discovery", "atari-games",
};

const char* kDatasets[] = {
    "imagenet", "cifar-10", "cifar-100", "mnist", "coco", "pascal-voc", "cityscapes", "ade20k",
    "kitti", "nyu-depth-v2", "squad", "glue", "wmt2014-english-french", "penn-treebank",
    "wikitext-103", "librispeech", "common-voice", "audioset", "kinetics-400", "ucf101",
    "human36m", "mpii", "celeba", "ffhq", "lsun", "movielens-20m", "amazon-reviews", "yelp",
    "cora", "citeseer", "pubmed", "ogbn-arxiv", "msr-vtt", "flickr30k", "conll-2003",
    "ontonotes", "tacred", "wikisql", "spider", "chestx-ray14", "brats-2018", "isic-2018",
    "modelnet40", "shapenet", "nuscenes",
};

struct EntryPlan {
    Date date;
    int role; // 0 seed/filler slot decided later, 1 improve, 2 regress, 3 annotation, 4 annotation example
};

struct ComboPlan {
    std::string slug;
    std::string metric;
    Family family = Family::fraction;
    bool loss = false;
    Date seed;
    bool member = false;
    bool special = false;
    std::vector<EntryPlan> entries; // includes the seed as the first element after sorting
};

struct Record {
    std::string combo;
    Date date;
    std::string metric;
    double value;
};

double uniform(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool is_annotation_day(const Date& d) {
    for (const auto& a : kAnnotations)
        if (a.date == d) return true;
    return false;
}

Date random_day_in_year(std::mt19937_64& rng, int year, const Date& not_before, const Date& not_after) {
    const Date lo0 = Date::from_ymd(year, 1, 1);
    const Date hi0 = Date::from_ymd(year, 12, 31);
    const Date lo = std::max(lo0, not_before);
    const Date hi = std::min(hi0, not_after);
    while (true) {
        const long off = uniform_int(rng, 0, static_cast<int>(hi - lo));
        const Date d = lo.plus_days(off);
        if (!is_annotation_day(d)) return d;
    }
}

double round6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

double seed_value(std::mt19937_64& rng, Family f) {
    switch (f) {
        case Family::fraction: return 0.30 + 0.40 * uniform(rng);
        case Family::percent: return 25.0 + 35.0 * uniform(rng);
        case Family::unbounded: return 100.0 * (1.0 + 20.0 * uniform(rng));
        case Family::loss: return 15.0 + 200.0 * uniform(rng);
    }
    return 1.0;
}

double improve_value(std::mt19937_64& rng, Family f, double best) {
    const double u = uniform(rng);
    switch (f) {
        case Family::fraction: return best + (1.0 - best) * (0.05 + 0.30 * u);
        case Family::percent: return best + (100.0 - best) * (0.05 + 0.30 * u);
        case Family::unbounded: return best * (1.03 + 0.25 * u);
        case Family::loss: return best * (1.0 - (0.04 + 0.25 * u));
    }
    return best;
}

double regress_value(std::mt19937_64& rng, Family f, double best) {
    const double u = uniform(rng);
    if (f == Family::loss) return best * (1.0 + 0.05 + 0.40 * u);
    return best * (1.0 - (0.03 + 0.30 * u));
}

// Annotation fillers keep their improvement rate at or below 0.30 so the
// day's example can always beat them, even on loss metrics where rates
// cannot exceed 1.
double filler_value(std::mt19937_64& rng, Family f, double best) {
    const double z = 0.03 + 0.27 * uniform(rng);
    switch (f) {
        case Family::loss: return best * (1.0 - z);
        case Family::unbounded: return best * (1.0 + z);
        case Family::fraction:
            if (best * (1.0 + z) < 1.0) return best * (1.0 + z);
            return best + (1.0 - best) * 0.5;
        case Family::percent:
            if (best * (1.0 + z) < 100.0) return best * (1.0 + z);
            return best + (100.0 - best) * 0.5;
    }
    return best;
}

// Example entries must out-improve every filler on their day.
double example_value(Family f, double best, double z_target) {
    if (f == Family::loss) return best * (1.0 - std::min(0.95, z_target));
    return best * (1.0 + z_target);
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixture_dump <output.jsonl>\n";
        return 1;
    }

    std::mt19937_64 rng(0x5eed0a50u);
    std::vector<ComboPlan> combos;
    combos.reserve(kTotalCombos);

    // Specials first so their indices are known.
    for (std::size_t k = 0; k < std::size(kAnnotations); ++k) {
        ComboPlan p;
        p.slug = kAnnotations[k].example_slug;
        p.metric = kAnnotations[k].example_metric;
        for (const auto& m : kAccuracyMetrics)
            if (p.metric == m.name) p.family = m.family;
        for (const auto& m : kLossMetrics)
            if (p.metric == m.name) {
                p.family = Family::loss;
                p.loss = true;
            }
        p.seed = kSpecialSeeds[k];
        p.member = true;
        p.special = true;
        combos.push_back(std::move(p));
    }

    // Synthetic combos, year by year.
    std::size_t slug_counter = 0;
    auto next_slug = [&]() {
        const std::size_t t = slug_counter % std::size(kTasks);
        const std::size_t d = (slug_counter / std::size(kTasks)) % std::size(kDatasets);
        const std::size_t v = slug_counter / (std::size(kTasks) * std::size(kDatasets));
        ++slug_counter;
        std::string s = std::string(kTasks[t]) + "-on-" + kDatasets[d];
        if (v > 0) s += "-v" + std::to_string(v + 1);
        return s;
    };

    const Date reach50 = Date::from_ymd(2009, 4, 15);
    for (const auto& quota : kQuotas) {
        int specials_this_year = 0;
        for (const auto& seed : kSpecialSeeds)
            if (seed.year() == quota.year) ++specials_this_year;
        const int synthetic = quota.combos - specials_this_year;
        for (int i = 0; i < synthetic; ++i) {
            ComboPlan p;
            p.slug = next_slug();
            const bool loss_kind = uniform(rng) < 0.24;
            const auto& pick =
                loss_kind ? kLossMetrics[uniform_int(rng, 0, static_cast<int>(std::size(kLossMetrics)) - 1)]
                          : kAccuracyMetrics[uniform_int(
                                rng, 0, static_cast<int>(std::size(kAccuracyMetrics)) - 1)];
            p.metric = pick.name;
            p.family = pick.family;
            p.loss = loss_kind;
            if (quota.year == 2009 && i == 0) {
                p.seed = reach50; // the 50th combination, fixed
            } else if (quota.year == 2009) {
                p.seed = random_day_in_year(rng, 2009, reach50.plus_days(1), kEndDate);
            } else if (quota.year == 2024) {
                p.seed = random_day_in_year(rng, 2024, Date::from_ymd(2024, 1, 1),
                                            Date::from_ymd(2024, 9, 30));
            } else {
                p.seed = random_day_in_year(rng, quota.year, Date::from_ymd(1900, 1, 1), kEndDate);
            }
            p.member = i < quota.members;
            combos.push_back(std::move(p));
        }
    }
    if (combos.size() != kTotalCombos) {
        std::cerr << "combo quota mismatch: " << combos.size() << "\n";
        return 1;
    }

    // Base entry schedules. Improvements may not predate the first
    // annotation day, so earlier extra entries are forced to regress.
    for (auto& p : combos) {
        p.entries.push_back({p.seed, 0});
        const long window = kEndDate - p.seed;
        int extras = 0;
        if (p.member) {
            extras = uniform_int(rng, 9, 14);
        } else {
            const int u = uniform_int(rng, 0, 99);
            if (u < 50) extras = 0;
            else if (u < 75) extras = 1;
            else if (u < 87) extras = 2;
            else if (u < 94) extras = 3;
            else if (u < 98) extras = uniform_int(rng, 4, 5);
            else extras = uniform_int(rng, 6, 7);
        }
        extras = std::min<long>(extras, window);
        for (int e = 0; e < extras; ++e) {
            Date d = p.seed.plus_days(uniform_int(rng, 1, static_cast<int>(window)));
            while (is_annotation_day(d)) d = d.plus_days(1);
            const bool improve = d > kFirstImprovement && uniform(rng) < 0.45;
            p.entries.push_back({d, improve ? 1 : 2});
        }
    }

    // Annotation fillers: members seeded at least 30 days earlier; specials
    // stay reserved for their own example role so the example improvement
    // can be generated last with a rate above every filler's.
    for (std::size_t k = 0; k < std::size(kAnnotations); ++k) {
        const auto& ann = kAnnotations[k];
        combos[k].entries.push_back({ann.date, 4});
        if (ann.improvers == 1) continue;
        std::vector<std::size_t> candidates;
        for (std::size_t c = std::size(kAnnotations); c < combos.size(); ++c) {
            if (combos[c].member && ann.date - combos[c].seed >= 30) candidates.push_back(c);
        }
        if (candidates.size() + 1 < ann.improvers) {
            std::cerr << "not enough filler candidates for " << ann.date.iso() << "\n";
            return 1;
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (std::size_t f = 0; f + 1 < ann.improvers; ++f) {
            combos[candidates[f]].entries.push_back({ann.date, 3});
        }
    }

    // Value walks. Non-special combos first: their annotation-day rates are
    // recorded so each example improvement can top its day.
    std::map<long, double> max_filler_z;
    std::vector<Record> records;
    records.reserve(40000);

    auto emit_combo = [&](ComboPlan& p) {
        std::stable_sort(p.entries.begin(), p.entries.end(),
                         [](const EntryPlan& a, const EntryPlan& b) { return a.date < b.date; });
        double best = 0.0;
        bool seeded = false;
        for (const auto& entry : p.entries) {
            // Rounding happens before the best updates so the tracked best
            // matches the running best a consumer of the file reconstructs.
            double value = 0.0;
            if (!seeded) {
                value = round6(seed_value(rng, p.family));
                best = value;
                seeded = true;
            } else if (entry.role == 4) {
                const double base_z = max_filler_z.count(entry.date.serial())
                                          ? max_filler_z[entry.date.serial()]
                                          : 0.0;
                value = round6(example_value(p.family, best, base_z + 0.05 + 0.10 * uniform(rng)));
                best = value;
            } else if (entry.role == 3) {
                value = round6(filler_value(rng, p.family, best));
                const double z = p.loss ? 1.0 - value / best : value / best - 1.0;
                auto& slot = max_filler_z[entry.date.serial()];
                slot = std::max(slot, z);
                best = value;
            } else if (entry.role == 1) {
                value = round6(improve_value(rng, p.family, best));
                best = value;
            } else {
                value = round6(regress_value(rng, p.family, best));
            }
            records.push_back({p.slug, entry.date, p.metric, value});
        }
    };

    for (std::size_t c = std::size(kAnnotations); c < combos.size(); ++c) emit_combo(combos[c]);
    for (std::size_t c = 0; c < std::size(kAnnotations); ++c) emit_combo(combos[c]);

    // Structural self-checks before anything is written.
    {
        std::map<std::string, std::size_t> per_combo;
        for (const auto& r : records) ++per_combo[r.combo];
        std::size_t members = 0;
        for (const auto& [_, n] : per_combo)
            if (n >= 10) ++members;
        if (per_combo.size() != kTotalCombos || members != kMemberTarget) {
            std::cerr << "fixture check failed: " << per_combo.size() << " combos, " << members
                      << " with >= 10 entries\n";
            return 1;
        }
        std::vector<Date> seeds;
        for (const auto& p : combos) seeds.push_back(p.seed);
        std::sort(seeds.begin(), seeds.end());
        if (seeds[49] != reach50 || seeds.front().year() != 1998) {
            std::cerr << "fixture check failed: seed schedule\n";
            return 1;
        }
    }

    // Shuffle and assign entry ids, then write JSON lines.
    std::shuffle(records.begin(), records.end(), rng);
    std::ofstream out(argv[1], std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 1;
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        char id[24];
        std::snprintf(id, sizeof(id), "pwc-%07zu", i);
        out << "{\"combo_id\":\"" << records[i].combo << "\",\"date\":\"" << records[i].date.iso()
            << "\",\"metric_name\":\"" << records[i].metric
            << "\",\"value\":" << asota::csv::format_double(records[i].value)
            << ",\"entry_id\":\"" << id << "\"}\n";
    }
    std::cout << "wrote " << records.size() << " records for " << kTotalCombos << " combos\n";
    return 0;
}
