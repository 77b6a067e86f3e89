#include "newscite/text/ngram_lm.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "newscite/common.hpp"

namespace newscite::text {

namespace {
const std::string kBos = "<s>";
const std::string kEos = "</s>";

std::string join(const std::vector<std::string>& toks, std::size_t begin, std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key += '\x1f';
    key += toks[i];
  }
  return key;
}
}  // namespace

NgramLm NgramLm::train(const std::vector<std::vector<std::string>>& docs, int n, double discount) {
  if (n < 1 || n > 3) throw Error("NgramLm: order must be 1, 2 or 3");
  if (discount <= 0.0 || discount >= 1.0) throw Error("NgramLm: discount must be in (0,1)");
  bool any = false;
  for (const auto& d : docs) any = any || !d.empty();
  if (!any) throw Error("NgramLm: empty corpus");

  NgramLm lm;
  lm.n_ = n;
  lm.discount_ = discount;
  lm.raw_.assign(static_cast<std::size_t>(n) + 1, Table{});
  lm.cont_.assign(static_cast<std::size_t>(n) + 1, Table{});

  for (const auto& doc : docs) {
    if (doc.empty()) continue;
    std::vector<std::string> padded;
    padded.reserve(doc.size() + static_cast<std::size_t>(n));
    for (int i = 0; i < n - 1; ++i) padded.push_back(kBos);
    padded.insert(padded.end(), doc.begin(), doc.end());
    padded.push_back(kEos);
    for (const auto& w : doc) lm.vocab_.insert(w);
    lm.vocab_.insert(kEos);

    for (int o = 1; o <= n; ++o) {
      std::size_t olen = static_cast<std::size_t>(o);
      std::size_t ctx_pad = static_cast<std::size_t>(n - o);  // skip partial-BOS duplicates
      for (std::size_t i = ctx_pad; i + olen <= padded.size(); ++i) {
        auto& entry = lm.raw_[static_cast<std::size_t>(o)][join(padded, i, i + olen - 1)];
        double& c = entry.counts[padded[i + olen - 1]];
        if (c == 0) entry.distinct += 1;
        c += 1;
        entry.total += 1;
      }
    }
  }

  // Continuation counts at order o: number of distinct left extensions of
  // each (o)-gram, taken from raw (o+1)-gram types.
  for (int o = 1; o < n; ++o) {
    const Table& higher = lm.raw_[static_cast<std::size_t>(o) + 1];
    Table& cont = lm.cont_[static_cast<std::size_t>(o)];
    for (const auto& [ctx_key, entry] : higher) {
      auto ctx_tokens = split(ctx_key, '\x1f');  // o tokens: u . rest
      for (const auto& [word, count] : entry.counts) {
        (void)count;
        std::string sub_ctx = join(ctx_tokens, 1, ctx_tokens.size());
        auto& ce = cont[sub_ctx];
        double& c = ce.counts[word];
        if (c == 0) ce.distinct += 1;
        c += 1;
        ce.total += 1;
      }
    }
  }
  return lm;
}

double NgramLm::unigram_prob(const std::string& word, bool is_unk) const {
  const Table& table = (n_ == 1) ? raw_[1] : cont_[1];
  auto it = table.find("");
  if (it == table.end() || it->second.total == 0) {
    return 1.0 / (static_cast<double>(vocab_.size()) + 1.0);
  }
  const ContextEntry& e = it->second;
  double gamma = discount_ * static_cast<double>(e.distinct) / e.total;
  double uniform = 1.0 / (static_cast<double>(vocab_.size()) + 1.0);
  if (is_unk) return gamma * uniform;
  double c = 0;
  auto cit = e.counts.find(word);
  if (cit != e.counts.end()) c = cit->second;
  return std::max(c - discount_, 0.0) / e.total + gamma * uniform;
}

double NgramLm::prob_order(int o, const std::vector<std::string>& ctx, const std::string& word,
                           bool is_unk) const {
  if (o == 1) return unigram_prob(word, is_unk);
  const Table& table = (o == n_) ? raw_[static_cast<std::size_t>(o)] : cont_[static_cast<std::size_t>(o)];
  std::string key = join(ctx, 0, ctx.size());
  auto it = table.find(key);
  std::vector<std::string> sub_ctx(ctx.begin() + 1, ctx.end());
  if (it == table.end() || it->second.total == 0) return prob_order(o - 1, sub_ctx, word, is_unk);
  const ContextEntry& e = it->second;
  double gamma = discount_ * static_cast<double>(e.distinct) / e.total;
  double lower = prob_order(o - 1, sub_ctx, word, is_unk);
  if (is_unk) return gamma * lower;
  double c = 0;
  auto cit = e.counts.find(word);
  if (cit != e.counts.end()) c = cit->second;
  return std::max(c - discount_, 0.0) / e.total + gamma * lower;
}

double NgramLm::prob(const std::string& word, const std::vector<std::string>& context) const {
  std::vector<std::string> ctx;
  std::size_t need = static_cast<std::size_t>(n_ - 1);
  if (context.size() >= need) {
    ctx.assign(context.end() - static_cast<long>(need), context.end());
  } else {
    for (std::size_t i = 0; i < need - context.size(); ++i) ctx.push_back(kBos);
    ctx.insert(ctx.end(), context.begin(), context.end());
  }
  bool is_unk = vocab_.find(word) == vocab_.end();
  return prob_order(n_, ctx, word, is_unk);
}

double NgramLm::unk_prob(const std::vector<std::string>& context) const {
  return prob("\x01unk\x01", context);
}

double NgramLm::avg_log_prob(const std::vector<std::string>& tokens) const {
  if (tokens.empty()) return 0.0;
  std::vector<std::string> ctx;
  for (int i = 0; i < n_ - 1; ++i) ctx.push_back(kBos);
  double sum = 0.0;
  for (const auto& w : tokens) {
    sum += std::log(prob(w, ctx));
    ctx.push_back(w);
  }
  return sum / static_cast<double>(tokens.size());
}

std::string NgramLm::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "newscite-ngram-lm";
  j["version"] = 1;
  j["order"] = n_;
  j["discount"] = discount_;
  j["vocabulary"] = vocab_;
  auto dump_tables = [](const std::vector<Table>& tables) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& table : tables) {
      nlohmann::ordered_json tj;
      for (const auto& [ctx, entry] : table) {
        tj[ctx] = {{"total", entry.total}, {"distinct", entry.distinct}, {"counts", entry.counts}};
      }
      out.push_back(std::move(tj));
    }
    return out;
  };
  j["raw"] = dump_tables(raw_);
  j["cont"] = dump_tables(cont_);
  return j.dump();
}

NgramLm NgramLm::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "newscite-ngram-lm") throw Error("not an n-gram LM file");
  if (j.value("version", 0) > 1) throw Error("LM file version is newer than supported (1)");
  NgramLm lm;
  lm.n_ = j["order"];
  lm.discount_ = j["discount"];
  auto vocab = j["vocabulary"].get<std::vector<std::string>>();
  lm.vocab_.insert(vocab.begin(), vocab.end());
  auto load_tables = [](const nlohmann::json& arr) {
    std::vector<Table> out;
    for (const auto& tj : arr) {
      Table table;
      for (const auto& [ctx, entry] : tj.items()) {
        ContextEntry e;
        e.total = entry["total"];
        e.distinct = entry["distinct"];
        e.counts = entry["counts"].get<std::map<std::string, double>>();
        table[ctx] = std::move(e);
      }
      out.push_back(std::move(table));
    }
    return out;
  };
  lm.raw_ = load_tables(j["raw"]);
  lm.cont_ = load_tables(j["cont"]);
  return lm;
}

double lm_kl(const NgramLm& a, const NgramLm& b) {
  std::set<std::string> uni;
  uni.insert(a.vocabulary().begin(), a.vocabulary().end());
  uni.insert(b.vocabulary().begin(), b.vocabulary().end());
  const std::vector<std::string> empty_ctx;
  double unseen_a = 0, unseen_b = 0;
  for (const auto& w : uni) {
    if (!a.vocabulary().count(w)) unseen_a += 1;
    if (!b.vocabulary().count(w)) unseen_b += 1;
  }
  double unk_a = a.unk_prob(empty_ctx) / (unseen_a + 1.0);
  double unk_b = b.unk_prob(empty_ctx) / (unseen_b + 1.0);
  auto qa = [&](const std::string& w) { return a.vocabulary().count(w) ? a.prob(w, empty_ctx) : unk_a; };
  auto qb = [&](const std::string& w) { return b.vocabulary().count(w) ? b.prob(w, empty_ctx) : unk_b; };
  double kl = 0.0;
  for (const auto& w : uni) {
    double pa = qa(w), pb = qb(w);
    if (pa > 0) kl += pa * std::log(pa / pb);
  }
  if (unk_a > 0) kl += unk_a * std::log(unk_a / unk_b);
  return std::max(kl, 0.0);
}

}  // namespace newscite::text
