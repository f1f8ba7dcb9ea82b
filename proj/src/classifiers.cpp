#include "ctml/classifiers.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ctml/errors.hpp"

namespace ctml {

using nlohmann::json;

namespace {

constexpr int kSerializationVersion = 1;

const std::vector<std::pair<ClassifierKind, const char*>>& kind_names() {
    static const std::vector<std::pair<ClassifierKind, const char*>> names = {
        {ClassifierKind::RandomForest, "random_forest"},
        {ClassifierKind::GradientBoostedTrees, "gradient_boosted_trees"},
        {ClassifierKind::LogisticRegression, "logistic_regression"},
        {ClassifierKind::Knn, "knn"},
        {ClassifierKind::SvmLinear, "svm_linear"},
        {ClassifierKind::SvmRbf, "svm_rbf"},
        {ClassifierKind::FeedforwardNet, "feedforward_net"},
    };
    return names;
}

}  // namespace

std::string to_string(ClassifierKind kind) {
    for (const auto& [k, name] : kind_names()) {
        if (k == kind) return name;
    }
    throw ContractError("unreachable classifier kind");
}

ClassifierKind parse_classifier_kind(const std::string& name) {
    for (const auto& [k, kname] : kind_names()) {
        if (name == kname) return k;
    }
    throw ArgumentError("unknown classifier kind '" + name + "'");
}

const std::vector<ClassifierKind>& all_classifier_kinds() {
    static const std::vector<ClassifierKind> kinds = [] {
        std::vector<ClassifierKind> v;
        for (const auto& [k, name] : kind_names()) v.push_back(k);
        return v;
    }();
    return kinds;
}

void ClassifierSpec::validate() const {
    if (rf.n_trees == 0) throw ArgumentError("n_trees must be at least 1");
    if (!(gbt.learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
    if (!(logreg.l2 >= 0.0)) throw ArgumentError("l2 must be non-negative");
    if (!(logreg.tol > 0.0)) throw ArgumentError("tolerance must be positive");
    if (knn.k == 0) throw ArgumentError("k must be at least 1");
    if (knn.k % 2 == 0) throw ArgumentError("k must be odd to avoid voting ties");
    if (!(svm.c > 0.0)) throw ArgumentError("C must be positive");
    if (!(svm.tol > 0.0)) throw ArgumentError("tolerance must be positive");
    if (net.hidden1 == 0 || net.hidden2 == 0) {
        throw ArgumentError("hidden layer sizes must be at least 1");
    }
    if (!(net.learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");
    if (!(net.dropout >= 0.0 && net.dropout < 1.0)) {
        throw ArgumentError("dropout must lie in [0, 1)");
    }
    if (net.epochs == 0) throw ArgumentError("epochs must be at least 1");
}

TrainedClassifier fit(const ClassifierSpec& spec, const FeatureMatrix& x,
                      const std::vector<int>& y, std::size_t n_threads) {
    spec.validate();
    if (x.values.rows != y.size() || y.empty()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    for (double v : x.values.data) {
        if (!std::isfinite(v)) throw ArgumentError("features must be finite");
    }
    std::size_t n_pos = 0;
    for (int label : y) {
        if (label != 0 && label != 1) throw ArgumentError("labels must be 0 or 1");
        n_pos += static_cast<std::size_t>(label);
    }

    TrainedClassifier c;
    c.kind = spec.kind;
    c.feature_names = x.feature_names;
    c.class1_prior = static_cast<double>(n_pos) / static_cast<double>(y.size());

    if (n_pos == 0 || n_pos == y.size()) {
        c.degenerate = true;
        c.degenerate_class = n_pos == 0 ? 0 : 1;
        return c;
    }

    switch (spec.kind) {
        case ClassifierKind::RandomForest:
            c.rf = fit_random_forest(x.values, y, spec.rf, spec.seed, n_threads);
            break;
        case ClassifierKind::GradientBoostedTrees:
            c.gbt = fit_gbt(x.values, y, spec.gbt);
            break;
        case ClassifierKind::LogisticRegression:
            c.logreg = fit_logistic_regression(x.values, y, spec.logreg);
            break;
        case ClassifierKind::Knn: {
            KnnParams params = spec.knn;
            // LOO folds may leave fewer rows than k; shrink to the largest
            // odd count available rather than failing the fold.
            if (params.k > x.values.rows) {
                params.k = x.values.rows % 2 == 1 ? x.values.rows : x.values.rows - 1;
            }
            c.knn = fit_knn(x.values, y, params);
            break;
        }
        case ClassifierKind::SvmLinear: {
            SvmParams params = spec.svm;
            params.kernel = SvmKernel::Linear;
            c.svm = fit_svm(x.values, y, params);
            break;
        }
        case ClassifierKind::SvmRbf: {
            SvmParams params = spec.svm;
            params.kernel = SvmKernel::Rbf;
            c.svm = fit_svm(x.values, y, params);
            break;
        }
        case ClassifierKind::FeedforwardNet:
            c.net = fit_net(x.values, y, spec.net, spec.seed);
            break;
    }
    return c;
}

std::vector<double> TrainedClassifier::predict_p1(const FeatureMatrix& x) const {
    if (x.feature_names != feature_names) {
        throw ContractError("feature names differ from the training features");
    }
    if (degenerate) {
        return std::vector<double>(x.values.rows, degenerate_class == 1 ? 1.0 : 0.0);
    }
    switch (kind) {
        case ClassifierKind::RandomForest: return rf_predict_p1(rf, x.values);
        case ClassifierKind::GradientBoostedTrees: return gbt_predict_p1(gbt, x.values);
        case ClassifierKind::LogisticRegression: return logreg_predict_p1(logreg, x.values);
        case ClassifierKind::Knn: return knn_predict_p1(knn, x.values);
        case ClassifierKind::SvmLinear:
        case ClassifierKind::SvmRbf: return svm_predict_p1(svm, x.values);
        case ClassifierKind::FeedforwardNet: return net_predict_p1(net, x.values);
    }
    throw ContractError("unreachable classifier kind");
}

Matrix TrainedClassifier::predict_proba(const FeatureMatrix& x) const {
    const std::vector<double> p1 = predict_p1(x);
    Matrix proba(p1.size(), 2);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        proba(i, 0) = 1.0 - p1[i];
        proba(i, 1) = p1[i];
    }
    return proba;
}

std::vector<int> TrainedClassifier::predict(const FeatureMatrix& x) const {
    const std::vector<double> p1 = predict_p1(x);
    std::vector<int> labels(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) labels[i] = p1[i] > 0.5 ? 1 : 0;
    return labels;
}

std::vector<double> feature_importance(const TrainedClassifier& c) {
    if (c.degenerate) return std::vector<double>(c.feature_names.size(), 0.0);
    switch (c.kind) {
        case ClassifierKind::RandomForest:
            return rf_impurity_importance(c.rf, c.feature_names.size());
        case ClassifierKind::GradientBoostedTrees:
            return gbt_gain_importance(c.gbt, c.feature_names.size());
        default:
            throw ArgumentError("feature importance is defined only for tree ensembles");
    }
}

namespace {

json tree_node_to_json(const Tree& tree, int index) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(index)];
    json j;
    j["cover"] = n.cover;
    if (n.is_leaf()) {
        j["leaf"] = n.value;
    } else {
        j["feature"] = n.feature;
        j["threshold"] = n.threshold;
        j["gain"] = n.gain;
        j["left"] = tree_node_to_json(tree, n.left);
        j["right"] = tree_node_to_json(tree, n.right);
    }
    return j;
}

int tree_node_from_json(const json& j, Tree& tree) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[index].cover = j.at("cover").get<double>();
    if (j.contains("leaf")) {
        tree.nodes[index].value = j.at("leaf").get<double>();
        return index;
    }
    const int feature = j.at("feature").get<int>();
    const double threshold = j.at("threshold").get<double>();
    const double gain = j.at("gain").get<double>();
    const int left = tree_node_from_json(j.at("left"), tree);
    const int right = tree_node_from_json(j.at("right"), tree);
    TreeNode& n = tree.nodes[index];
    n.feature = feature;
    n.threshold = threshold;
    n.gain = gain;
    n.left = left;
    n.right = right;
    return index;
}

json trees_to_json(const std::vector<Tree>& trees) {
    json arr = json::array();
    for (const Tree& t : trees) arr.push_back(tree_node_to_json(t, 0));
    return arr;
}

std::vector<Tree> trees_from_json(const json& arr) {
    std::vector<Tree> trees;
    for (const json& j : arr) {
        Tree t;
        tree_node_from_json(j, t);
        trees.push_back(std::move(t));
    }
    return trees;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
    json j;
    j["cols"] = m.cols;
    j["rows"] = rows;
    return j;
}

Matrix matrix_from_json(const json& j) {
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const json& rows = j.at("rows");
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row = rows[r].get<std::vector<double>>();
        if (row.size() != cols) throw ParseError("matrix row width mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

}  // namespace

std::string serialize_classifier(const TrainedClassifier& c) {
    json j;
    j["format"] = "ctml-classifier";
    j["version"] = kSerializationVersion;
    j["kind"] = to_string(c.kind);
    j["feature_names"] = c.feature_names;
    j["class1_prior"] = c.class1_prior;
    j["degenerate"] = c.degenerate;
    j["degenerate_class"] = c.degenerate_class;

    json model;
    if (!c.degenerate) {
        switch (c.kind) {
            case ClassifierKind::RandomForest:
                model["trees"] = trees_to_json(c.rf.trees);
                break;
            case ClassifierKind::GradientBoostedTrees:
                model["base_score"] = c.gbt.base_score;
                model["trees"] = trees_to_json(c.gbt.trees);
                model["stage_loss"] = c.gbt.stage_loss;
                break;
            case ClassifierKind::LogisticRegression:
                model["weights"] = c.logreg.weights;
                model["bias"] = c.logreg.bias;
                break;
            case ClassifierKind::Knn:
                model["k"] = c.knn.k;
                model["train_x"] = matrix_to_json(c.knn.train_x);
                model["train_y"] = c.knn.train_y;
                break;
            case ClassifierKind::SvmLinear:
            case ClassifierKind::SvmRbf:
                model["kernel"] = c.svm.kernel == SvmKernel::Rbf ? "rbf" : "linear";
                model["gamma"] = c.svm.gamma;
                model["b"] = c.svm.b;
                model["alpha_y"] = c.svm.alpha_y;
                model["support_x"] = matrix_to_json(c.svm.support_x);
                model["calib_slope"] = c.svm.calib_slope;
                model["calib_intercept"] = c.svm.calib_intercept;
                break;
            case ClassifierKind::FeedforwardNet:
                model["w1"] = matrix_to_json(c.net.w1);
                model["w2"] = matrix_to_json(c.net.w2);
                model["w3"] = matrix_to_json(c.net.w3);
                model["b1"] = c.net.b1;
                model["b2"] = c.net.b2;
                model["b3"] = c.net.b3;
                break;
        }
    }
    j["model"] = std::move(model);
    return j.dump(2) + "\n";
}

TrainedClassifier deserialize_classifier(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("classifier JSON: ") + e.what());
    }
    if (j.value("format", "") != "ctml-classifier") {
        throw ParseError("not a classifier document");
    }
    if (j.value("version", 0) != kSerializationVersion) {
        throw ParseError("unsupported classifier document version");
    }

    TrainedClassifier c;
    c.kind = parse_classifier_kind(j.at("kind").get<std::string>());
    c.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    c.class1_prior = j.at("class1_prior").get<double>();
    c.degenerate = j.at("degenerate").get<bool>();
    c.degenerate_class = j.at("degenerate_class").get<int>();
    if (c.degenerate) return c;

    const json& model = j.at("model");
    switch (c.kind) {
        case ClassifierKind::RandomForest:
            c.rf.trees = trees_from_json(model.at("trees"));
            break;
        case ClassifierKind::GradientBoostedTrees:
            c.gbt.base_score = model.at("base_score").get<double>();
            c.gbt.trees = trees_from_json(model.at("trees"));
            c.gbt.stage_loss = model.at("stage_loss").get<std::vector<double>>();
            break;
        case ClassifierKind::LogisticRegression:
            c.logreg.weights = model.at("weights").get<std::vector<double>>();
            c.logreg.bias = model.at("bias").get<double>();
            break;
        case ClassifierKind::Knn:
            c.knn.k = model.at("k").get<std::size_t>();
            c.knn.train_x = matrix_from_json(model.at("train_x"));
            c.knn.train_y = model.at("train_y").get<std::vector<int>>();
            break;
        case ClassifierKind::SvmLinear:
        case ClassifierKind::SvmRbf:
            c.svm.kernel = model.at("kernel").get<std::string>() == "rbf" ? SvmKernel::Rbf
                                                                          : SvmKernel::Linear;
            c.svm.gamma = model.at("gamma").get<double>();
            c.svm.b = model.at("b").get<double>();
            c.svm.alpha_y = model.at("alpha_y").get<std::vector<double>>();
            c.svm.support_x = matrix_from_json(model.at("support_x"));
            c.svm.calib_slope = model.at("calib_slope").get<double>();
            c.svm.calib_intercept = model.at("calib_intercept").get<double>();
            break;
        case ClassifierKind::FeedforwardNet:
            c.net.w1 = matrix_from_json(model.at("w1"));
            c.net.w2 = matrix_from_json(model.at("w2"));
            c.net.w3 = matrix_from_json(model.at("w3"));
            c.net.b1 = model.at("b1").get<std::vector<double>>();
            c.net.b2 = model.at("b2").get<std::vector<double>>();
            c.net.b3 = model.at("b3").get<std::vector<double>>();
            break;
    }
    return c;
}

}  // namespace ctml
