// Copyright 2026 The penn Authors. All Rights Reserved.
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

#include "penn/datagen.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string_view>

#include "penn/error.hpp"
#include "penn/rng.hpp"

namespace penn::datagen {

namespace {

// First 23 rows are the common-country subset.
const std::vector<WordPair> kCapitals = {
    {"athens", "greece"},      {"baghdad", "iraq"},       {"bangkok", "thailand"},
    {"beijing", "china"},      {"berlin", "germany"},     {"bern", "switzerland"},
    {"cairo", "egypt"},        {"canberra", "australia"}, {"hanoi", "vietnam"},
    {"havana", "cuba"},        {"helsinki", "finland"},   {"islamabad", "pakistan"},
    {"kabul", "afghanistan"},  {"london", "england"},     {"madrid", "spain"},
    {"moscow", "russia"},      {"oslo", "norway"},        {"ottawa", "canada"},
    {"paris", "france"},       {"rome", "italy"},         {"stockholm", "sweden"},
    {"tehran", "iran"},        {"tokyo", "japan"},
    {"abuja", "nigeria"},      {"accra", "ghana"},        {"algiers", "algeria"},
    {"amman", "jordan"},       {"ankara", "turkey"},      {"astana", "kazakhstan"},
    {"baku", "azerbaijan"},    {"bamako", "mali"},        {"bratislava", "slovakia"},
    {"brussels", "belgium"},   {"bucharest", "romania"},  {"budapest", "hungary"},
    {"caracas", "venezuela"},  {"chisinau", "moldova"},   {"copenhagen", "denmark"},
    {"dakar", "senegal"},      {"damascus", "syria"},     {"dhaka", "bangladesh"},
    {"doha", "qatar"},         {"dublin", "ireland"},     {"dushanbe", "tajikistan"},
    {"gaborone", "botswana"},  {"harare", "zimbabwe"},    {"jakarta", "indonesia"},
    {"kampala", "uganda"},     {"kathmandu", "nepal"},    {"khartoum", "sudan"},
    {"kiev", "ukraine"},       {"kigali", "rwanda"},      {"kingston", "jamaica"},
    {"lima", "peru"},          {"lisbon", "portugal"},    {"ljubljana", "slovenia"},
    {"luanda", "angola"},      {"lusaka", "zambia"},      {"manila", "philippines"},
    {"minsk", "belarus"},      {"monrovia", "liberia"},   {"montevideo", "uruguay"},
    {"nairobi", "kenya"},      {"nicosia", "cyprus"},     {"quito", "ecuador"},
    {"riga", "latvia"},        {"santiago", "chile"},     {"skopje", "macedonia"},
    {"sofia", "bulgaria"},     {"tallinn", "estonia"},
};

const std::vector<WordPair> kCurrencies = {
    {"algeria", "dinar"},   {"angola", "kwanza"},  {"argentina", "peso"},
    {"armenia", "dram"},    {"brazil", "real"},    {"bulgaria", "lev"},
    {"cambodia", "riel"},   {"canada", "dollar"},  {"croatia", "kuna"},
    {"denmark", "krone"},   {"europe", "euro"},    {"hungary", "forint"},
    {"india", "rupee"},     {"iran", "rial"},      {"japan", "yen"},
    {"korea", "won"},       {"latvia", "lats"},    {"lithuania", "litas"},
    {"macedonia", "denar"}, {"malaysia", "ringgit"}, {"mexico", "peso"},
    {"nigeria", "naira"},   {"poland", "zloty"},   {"romania", "leu"},
    {"russia", "ruble"},    {"sweden", "krona"},   {"thailand", "baht"},
    {"ukraine", "hryvnia"}, {"usa", "dollar"},     {"vietnam", "dong"},
};

const std::vector<WordPair> kCityState = {
    {"houston", "texas"},        {"dallas", "texas"},
    {"fresno", "california"},    {"sacramento", "california"},
    {"phoenix", "arizona"},      {"tucson", "arizona"},
    {"miami", "florida"},        {"tampa", "florida"},
    {"cleveland", "ohio"},       {"columbus", "ohio"},
    {"atlanta", "georgia"},      {"savannah", "georgia"},
    {"memphis", "tennessee"},    {"nashville", "tennessee"},
    {"philadelphia", "pennsylvania"}, {"pittsburgh", "pennsylvania"},
    {"portland", "oregon"},      {"salem", "oregon"},
    {"milwaukee", "wisconsin"},  {"madison", "wisconsin"},
    {"wichita", "kansas"},       {"topeka", "kansas"},
    {"louisville", "kentucky"},  {"lexington", "kentucky"},
    {"reno", "nevada"},          {"henderson", "nevada"},
    {"anchorage", "alaska"},     {"fairbanks", "alaska"},
    {"honolulu", "hawaii"},      {"hilo", "hawaii"},
    {"boise", "idaho"},          {"nampa", "idaho"},
    {"billings", "montana"},     {"missoula", "montana"},
    {"birmingham", "alabama"},   {"huntsville", "alabama"},
    {"minneapolis", "minnesota"}, {"rochester", "minnesota"},
    {"provo", "utah"},           {"ogden", "utah"},
    {"richmond", "virginia"},    {"norfolk", "virginia"},
    {"spokane", "washington"},   {"tacoma", "washington"},
    {"tulsa", "oklahoma"},       {"shreveport", "louisiana"},
    {"davenport", "iowa"},       {"denver", "colorado"},
    {"chicago", "illinois"},     {"detroit", "michigan"},
    {"indianapolis", "indiana"},
};

const std::vector<WordPair> kFamily = {
    {"boy", "girl"},           {"brother", "sister"},
    {"brothers", "sisters"},   {"dad", "mom"},
    {"father", "mother"},      {"grandfather", "grandmother"},
    {"grandpa", "grandma"},    {"grandson", "granddaughter"},
    {"groom", "bride"},        {"he", "she"},
    {"his", "her"},            {"husband", "wife"},
    {"king", "queen"},         {"man", "woman"},
    {"nephew", "niece"},       {"policeman", "policewoman"},
    {"prince", "princess"},    {"son", "daughter"},
    {"sons", "daughters"},     {"stepbrother", "stepsister"},
    {"stepfather", "stepmother"}, {"stepson", "stepdaughter"},
    {"uncle", "aunt"},
};

const std::vector<WordPair> kAdjAdverb = {
    {"amazing", "amazingly"},     {"apparent", "apparently"},
    {"bad", "badly"},             {"calm", "calmly"},
    {"cheerful", "cheerfully"},   {"complete", "completely"},
    {"efficient", "efficiently"}, {"extreme", "extremely"},
    {"free", "freely"},           {"furious", "furiously"},
    {"happy", "happily"},         {"immediate", "immediately"},
    {"infrequent", "infrequently"}, {"lucky", "luckily"},
    {"most", "mostly"},           {"obvious", "obviously"},
    {"occasional", "occasionally"}, {"possible", "possibly"},
    {"precise", "precisely"},     {"professional", "professionally"},
    {"quick", "quickly"},         {"quiet", "quietly"},
    {"rapid", "rapidly"},         {"rare", "rarely"},
    {"reluctant", "reluctantly"}, {"safe", "safely"},
    {"serious", "seriously"},     {"slow", "slowly"},
    {"sudden", "suddenly"},       {"swift", "swiftly"},
    {"typical", "typically"},     {"usual", "usually"},
};

const std::vector<WordPair> kOpposites = {
    {"acceptable", "unacceptable"},   {"aware", "unaware"},
    {"certain", "uncertain"},         {"clear", "unclear"},
    {"comfortable", "uncomfortable"}, {"competent", "incompetent"},
    {"competitive", "uncompetitive"}, {"consistent", "inconsistent"},
    {"convenient", "inconvenient"},   {"convincing", "unconvincing"},
    {"decided", "undecided"},         {"efficient", "inefficient"},
    {"ethical", "unethical"},         {"fortunate", "unfortunate"},
    {"honest", "dishonest"},          {"impressive", "unimpressive"},
    {"informative", "uninformative"}, {"informed", "uninformed"},
    {"known", "unknown"},             {"likely", "unlikely"},
    {"logical", "illogical"},         {"pleasant", "unpleasant"},
    {"possible", "impossible"},       {"productive", "unproductive"},
    {"rational", "irrational"},       {"reasonable", "unreasonable"},
    {"responsible", "irresponsible"}, {"sure", "unsure"},
    {"tasteful", "distasteful"},
};

const std::vector<WordPair> kComparatives = {
    {"bad", "worse"},     {"big", "bigger"},     {"bright", "brighter"},
    {"cheap", "cheaper"}, {"cold", "colder"},    {"cool", "cooler"},
    {"dark", "darker"},   {"deep", "deeper"},    {"easy", "easier"},
    {"fast", "faster"},   {"good", "better"},    {"great", "greater"},
    {"hard", "harder"},   {"heavy", "heavier"},  {"high", "higher"},
    {"hot", "hotter"},    {"large", "larger"},   {"long", "longer"},
    {"loud", "louder"},   {"low", "lower"},      {"new", "newer"},
    {"old", "older"},     {"quick", "quicker"},  {"sharp", "sharper"},
    {"short", "shorter"}, {"simple", "simpler"}, {"slow", "slower"},
    {"small", "smaller"}, {"smart", "smarter"},  {"strong", "stronger"},
    {"tall", "taller"},   {"tight", "tighter"},  {"tough", "tougher"},
    {"warm", "warmer"},   {"weak", "weaker"},    {"wide", "wider"},
    {"young", "younger"},
};

const std::vector<WordPair> kSuperlatives = {
    {"bad", "worst"},       {"big", "biggest"},     {"bright", "brightest"},
    {"cheap", "cheapest"},  {"cold", "coldest"},    {"cool", "coolest"},
    {"dark", "darkest"},    {"easy", "easiest"},    {"fast", "fastest"},
    {"good", "best"},       {"great", "greatest"},  {"hard", "hardest"},
    {"heavy", "heaviest"},  {"high", "highest"},    {"hot", "hottest"},
    {"large", "largest"},   {"long", "longest"},    {"loud", "loudest"},
    {"low", "lowest"},      {"new", "newest"},      {"old", "oldest"},
    {"quick", "quickest"},  {"sharp", "sharpest"},  {"short", "shortest"},
    {"simple", "simplest"}, {"slow", "slowest"},    {"small", "smallest"},
    {"smart", "smartest"},  {"strong", "strongest"}, {"sweet", "sweetest"},
    {"tall", "tallest"},    {"warm", "warmest"},    {"weak", "weakest"},
    {"wide", "widest"},
};

const std::vector<WordPair> kParticiples = {
    {"code", "coding"},         {"dance", "dancing"},
    {"debug", "debugging"},     {"decrease", "decreasing"},
    {"describe", "describing"}, {"discover", "discovering"},
    {"enhance", "enhancing"},   {"fly", "flying"},
    {"generate", "generating"}, {"go", "going"},
    {"implement", "implementing"}, {"increase", "increasing"},
    {"invent", "inventing"},    {"jump", "jumping"},
    {"listen", "listening"},    {"look", "looking"},
    {"move", "moving"},         {"play", "playing"},
    {"predict", "predicting"},  {"read", "reading"},
    {"run", "running"},         {"say", "saying"},
    {"scream", "screaming"},    {"see", "seeing"},
    {"shuffle", "shuffling"},   {"sing", "singing"},
    {"sit", "sitting"},         {"slow", "slowing"},
    {"swim", "swimming"},       {"think", "thinking"},
    {"vanish", "vanishing"},    {"walk", "walking"},
    {"write", "writing"},
};

const std::vector<WordPair> kNationalities = {
    {"albania", "albanian"},   {"australia", "australian"},
    {"austria", "austrian"},   {"belarus", "belarusian"},
    {"brazil", "brazilian"},   {"bulgaria", "bulgarian"},
    {"cambodia", "cambodian"}, {"chile", "chilean"},
    {"china", "chinese"},      {"colombia", "colombian"},
    {"croatia", "croatian"},   {"denmark", "danish"},
    {"egypt", "egyptian"},     {"england", "english"},
    {"france", "french"},      {"germany", "german"},
    {"greece", "greek"},       {"iceland", "icelandic"},
    {"india", "indian"},       {"ireland", "irish"},
    {"israel", "israeli"},     {"italy", "italian"},
    {"japan", "japanese"},     {"korea", "korean"},
    {"macedonia", "macedonian"}, {"malta", "maltese"},
    {"mexico", "mexican"},     {"moldova", "moldovan"},
    {"netherlands", "dutch"},  {"norway", "norwegian"},
    {"peru", "peruvian"},      {"poland", "polish"},
    {"portugal", "portuguese"}, {"russia", "russian"},
    {"slovakia", "slovakian"}, {"spain", "spanish"},
    {"sweden", "swedish"},     {"switzerland", "swiss"},
    {"thailand", "thai"},      {"ukraine", "ukrainian"},
    {"vietnam", "vietnamese"},
};

const std::vector<WordPair> kPastTense = {
    {"code", "coded"},         {"dance", "danced"},
    {"decrease", "decreased"}, {"describe", "described"},
    {"discover", "discovered"}, {"enhance", "enhanced"},
    {"explain", "explained"},  {"feed", "fed"},
    {"find", "found"},         {"fly", "flew"},
    {"generate", "generated"}, {"get", "got"},
    {"go", "went"},            {"implement", "implemented"},
    {"increase", "increased"}, {"jump", "jumped"},
    {"keep", "kept"},          {"knock", "knocked"},
    {"know", "knew"},          {"listen", "listened"},
    {"look", "looked"},        {"make", "made"},
    {"mean", "meant"},         {"meet", "met"},
    {"move", "moved"},         {"pay", "paid"},
    {"play", "played"},        {"predict", "predicted"},
    {"run", "ran"},            {"say", "said"},
    {"scream", "screamed"},    {"see", "saw"},
    {"sell", "sold"},          {"sing", "sang"},
    {"sit", "sat"},            {"slow", "slowed"},
    {"swim", "swam"},          {"take", "took"},
    {"think", "thought"},      {"walk", "walked"},
};

const std::vector<WordPair> kPlurals = {
    {"banana", "bananas"},     {"bird", "birds"},
    {"bottle", "bottles"},     {"building", "buildings"},
    {"car", "cars"},           {"cat", "cats"},
    {"child", "children"},     {"cloud", "clouds"},
    {"color", "colors"},       {"computer", "computers"},
    {"cow", "cows"},           {"dog", "dogs"},
    {"dollar", "dollars"},     {"donkey", "donkeys"},
    {"dream", "dreams"},       {"eagle", "eagles"},
    {"elephant", "elephants"}, {"eye", "eyes"},
    {"finger", "fingers"},     {"goat", "goats"},
    {"hand", "hands"},         {"horse", "horses"},
    {"house", "houses"},       {"lion", "lions"},
    {"machine", "machines"},   {"man", "men"},
    {"mango", "mangoes"},      {"melon", "melons"},
    {"monkey", "monkeys"},     {"mouse", "mice"},
    {"onion", "onions"},       {"pear", "pears"},
    {"pig", "pigs"},           {"rat", "rats"},
    {"road", "roads"},         {"snake", "snakes"},
    {"woman", "women"},
};

const std::vector<WordPair> kPluralVerbs = {
    {"decrease", "decreases"}, {"describe", "describes"},
    {"eat", "eats"},           {"enhance", "enhances"},
    {"estimate", "estimates"}, {"find", "finds"},
    {"generate", "generates"}, {"go", "goes"},
    {"implement", "implements"}, {"increase", "increases"},
    {"listen", "listens"},     {"play", "plays"},
    {"predict", "predicts"},   {"provide", "provides"},
    {"say", "says"},           {"scream", "screams"},
    {"search", "searches"},    {"see", "sees"},
    {"shuffle", "shuffles"},   {"sing", "sings"},
    {"sit", "sits"},           {"slow", "slows"},
    {"speak", "speaks"},       {"swim", "swims"},
    {"talk", "talks"},         {"think", "thinks"},
    {"vanish", "vanishes"},    {"walk", "walks"},
    {"work", "works"},         {"write", "writes"},
};

// Regular nouns used only for DIEM singular/plural checks (+s inflection).
const char* kRegularNouns[] = {
    "table",   "chair",    "window",  "door",    "garden",  "flower",
    "tree",    "river",    "mountain", "valley",  "ocean",   "island",
    "bridge",  "tower",    "castle",  "village", "market",  "farmer",
    "teacher", "student",  "doctor",  "lawyer",  "engineer", "painter",
    "singer",  "dancer",   "writer",  "reader",  "runner",  "worker",
    "basket",  "bucket",   "candle",  "carpet",  "ceiling", "cellar",
    "corner",  "curtain",  "cushion", "drawer",  "fence",   "hammer",
    "jacket",  "kettle",   "kitchen", "ladder",  "lantern", "meadow",
    "mirror",  "needle",   "orchard", "pencil",  "pillow",  "pocket",
    "ribbon",  "saddle",   "shelter", "shovel",  "signal",  "stable",
    "statue",  "stream",   "street",  "temple",  "ticket",  "tunnel",
    "wagon",   "wallet",   "whistle", "anchor",  "barrel",  "beacon",
    "blanket", "bonnet",   "border",  "branch",  "button",  "cabin",
    "canyon",  "chapel",   "cottage", "crystal", "desert",  "engine",
    "feather", "forest",   "fountain", "harbor",  "helmet",  "hunter",
    "jungle",  "lake",     "lamp",    "leaf",    "letter",  "magnet",
    "mantle",  "marble",   "monument", "nest",
};

Lexicon build_lexicon() {
  Lexicon lex;
  lex.capitals = kCapitals;
  lex.currencies = kCurrencies;
  lex.city_state = kCityState;
  lex.family = kFamily;
  lex.adj_adverb = kAdjAdverb;
  lex.opposites = kOpposites;
  lex.comparatives = kComparatives;
  lex.superlatives = kSuperlatives;
  lex.participles = kParticiples;
  lex.nationalities = kNationalities;
  lex.past_tense = kPastTense;
  lex.plurals = kPlurals;
  lex.plural_verbs = kPluralVerbs;
  static std::vector<std::string> owned;  // keeps the +s strings alive
  owned.reserve(std::size(kRegularNouns));
  for (const char* n : kRegularNouns) {
    owned.push_back(std::string(n) + "s");
    lex.diem_plurals.push_back({n, owned.back().c_str()});
  }
  return lex;
}

struct CategorySpec {
  const char* name;
  const std::vector<WordPair>* pairs;
  std::size_t pair_limit;  // 0 = all
  std::size_t quads;
};

std::vector<CategorySpec> category_table(const Lexicon& lex) {
  return {
      {"capital-common-countries", &lex.capitals, 23, 506},
      {"capital-world", &lex.capitals, 0, 4524},
      {"currency", &lex.currencies, 0, 866},
      {"city-in-state", &lex.city_state, 0, 2467},
      {"family", &lex.family, 0, 506},
      {"gram1-adjective-to-adverb", &lex.adj_adverb, 0, 992},
      {"gram2-opposite", &lex.opposites, 0, 812},
      {"gram3-comparative", &lex.comparatives, 0, 1332},
      {"gram4-superlative", &lex.superlatives, 0, 1122},
      {"gram5-present-participle", &lex.participles, 0, 1056},
      {"gram6-nationality-adjective", &lex.nationalities, 0, 1599},
      {"gram7-past-tense", &lex.past_tense, 0, 1560},
      {"gram8-plural", &lex.plurals, 0, 1332},
      {"gram9-plural-verbs", &lex.plural_verbs, 0, 870},
  };
}

}  // namespace

const Lexicon& lexicon() {
  static const Lexicon lex = build_lexicon();
  return lex;
}

void write_analogy_file(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for write: " + path);
  const Lexicon& lex = lexicon();
  for (const CategorySpec& spec : category_table(lex)) {
    out << ": " << spec.name << "\n";
    const auto& pairs = *spec.pairs;
    const std::size_t n = spec.pair_limit ? spec.pair_limit : pairs.size();
    std::size_t emitted = 0;
    for (std::size_t i = 0; i < n && emitted < spec.quads; ++i) {
      for (std::size_t j = 0; j < n && emitted < spec.quads; ++j) {
        if (i == j) continue;
        // b == d makes the question unanswerable under query-word exclusion
        if (std::string_view(pairs[i].b) == pairs[j].b) continue;
        out << pairs[i].a << ' ' << pairs[i].b << ' ' << pairs[j].a << ' '
            << pairs[j].b << "\n";
        ++emitted;
      }
    }
    if (emitted != spec.quads)
      throw Error(std::string("lexicon too small for category ") + spec.name);
  }
  if (!out) throw Error("I/O error while writing analogy file: " + path);
}

namespace {

class SentenceWriter {
 public:
  SentenceWriter(std::ofstream& out, Rng& rng, const Lexicon& lex)
      : out_(out), rng_(rng), lex_(lex) {}

  std::uint64_t tokens_written() const { return tokens_; }

  const WordPair& pick(const std::vector<WordPair>& list) {
    return list[rng_.uniform_below(list.size())];
  }
  // A second pair distinct from the first, for then/than contrasts.
  const WordPair& pick_other(const std::vector<WordPair>& list,
                             const WordPair& not_this) {
    for (int i = 0; i < 8; ++i) {
      const WordPair& p = pick(list);
      if (p.a != not_this.a) return p;
    }
    return pick(list);
  }

  void word(std::string_view w) {
    buffer_.append(w);
    buffer_.push_back(' ');
    ++tokens_;
  }
  void number(std::uint64_t lo, std::uint64_t hi) {
    word(std::to_string(lo + rng_.uniform_below(hi - lo + 1)));
  }
  void end() {
    if (buffer_.empty()) return;
    buffer_.back() = '\n';
    out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }

  // One sentence. Class templates carry the ordered syntactic cues; binding
  // templates tie the two forms of one relation pair together and keep the
  // pair members at most two tokens apart, inside a window of 2.
  void sentence() {
    const std::uint64_t t = rng_.uniform_below(100);
    if (t < 8) {  // singular agreement
      const WordPair& n = pick(lex_.plurals);
      const WordPair& v = pick(lex_.plural_verbs);
      word("the"); word(n.a); word(v.b); word("near"); word("the");
      word(pick(lex_.plurals).a);
    } else if (t < 16) {  // plural agreement
      const WordPair& n = pick(lex_.plurals);
      const WordPair& v = pick(lex_.plural_verbs);
      word("the"); word(n.b); word(v.a); word("near"); word("the");
      word(pick(lex_.plurals).b);
    } else if (t < 22) {  // number binding
      const WordPair& n = pick(lex_.plurals);
      word("one"); word(n.a); word("or"); word(n.b);
    } else if (t < 26) {  // number binding, other order
      const WordPair& n = pick(lex_.plurals);
      word("the"); word(n.a); word("and"); word(n.b); word("alike");
    } else if (t < 30) {  // past tense
      const WordPair& v = pick(lex_.past_tense);
      word("yesterday"); word("the"); word(pick(lex_.plurals).a); word(v.b);
      word("again");
    } else if (t < 33) {  // future keeps the base form
      const WordPair& v = pick(lex_.past_tense);
      word("tomorrow"); word("the"); word(pick(lex_.plurals).b); word("will");
      word(v.a); word("again");
    } else if (t < 38) {  // past binding
      const WordPair& v = pick(lex_.past_tense);
      word("they"); word(v.a); word("and"); word(v.b); word("again");
    } else if (t < 41) {  // participle singular
      const WordPair& v = pick(lex_.participles);
      word("the"); word(pick(lex_.plurals).a); word("is"); word(v.b);
      word("now");
    } else if (t < 44) {  // participle plural
      const WordPair& v = pick(lex_.participles);
      word("the"); word(pick(lex_.plurals).b); word("are"); word(v.b);
      word("now");
    } else if (t < 48) {  // participle binding
      const WordPair& v = pick(lex_.participles);
      word("they"); word(v.a); word("while"); word(v.b); word("too");
    } else if (t < 52) {  // comparative
      const WordPair& a = pick(lex_.comparatives);
      word("this"); word(pick(lex_.plurals).a); word("is"); word(a.b);
      word("than"); word("that"); word(pick(lex_.plurals).a);
    } else if (t < 56) {  // comparative binding
      const WordPair& a = pick(lex_.comparatives);
      word("it"); word("was"); word(a.a); word("then"); word(a.b);
    } else if (t < 59) {  // superlative
      const WordPair& a = pick(lex_.superlatives);
      word("it"); word("was"); word("the"); word(a.b);
      word(pick(lex_.plurals).a); word("of"); word("all");
    } else if (t < 62) {  // superlative binding
      const WordPair& a = pick(lex_.superlatives);
      word("from"); word(a.a); word("to"); word(a.b); word("overnight");
    } else if (t < 64) {  // plain adjective
      const WordPair& a = pick(lex_.adj_adverb);
      word("a"); word("very"); word(a.a); word(pick(lex_.plurals).a);
      word("appeared");
    } else if (t < 66) {  // adverb
      const WordPair& a = pick(lex_.adj_adverb);
      word("he"); word("moved"); word(a.b); word("across"); word("the");
      word("room");
    } else if (t < 70) {  // adjective/adverb binding
      const WordPair& a = pick(lex_.adj_adverb);
      word("they"); word("look"); word(a.a); word("and"); word(a.b);
    } else if (t < 72) {  // opposites
      const WordPair& o = pick(lex_.opposites);
      word("the"); word("plan"); word("was"); word(o.a); word("not");
      word(o.b);
    } else if (t < 74) {  // opposites binding
      const WordPair& o = pick(lex_.opposites);
      word(o.a); word("or"); word(o.b); word("either"); word("way");
    } else if (t < 78) {  // capital binding
      const WordPair& p = pick(lex_.capitals);
      word("they"); word("visited"); word(p.a); word("in"); word(p.b);
    } else if (t < 80) {
      const WordPair& p = pick(lex_.capitals);
      word(p.a); word("is"); word("the"); word("capital"); word("of");
      word(p.b);
    } else if (t < 81) {
      const WordPair& p = pick(lex_.capitals);
      word("they"); word("flew"); word("from"); word(p.a); word("to");
      word(pick_other(lex_.capitals, p).a);
    } else if (t < 84) {  // currency binding
      const WordPair& p = pick(lex_.currencies);
      word("he"); word("paid"); number(2, 99); word(p.b); word("in");
      word(p.a);
    } else if (t < 85) {
      const WordPair& p = pick(lex_.currencies);
      word("the"); word(p.b); word("is"); word("the"); word("currency");
      word("of"); word(p.a);
    } else if (t < 88) {  // city binding
      const WordPair& p = pick(lex_.city_state);
      word("she"); word("lives"); word("in"); word(p.a); word("in"); word(p.b);
    } else if (t < 89) {
      const WordPair& p = pick(lex_.city_state);
      word(p.a); word("is"); word("a"); word("city"); word("in"); word(p.b);
    } else if (t < 92) {  // nationality binding
      const WordPair& p = pick(lex_.nationalities);
      word("the"); word(p.b); word("in"); word(p.a); word("agree");
    } else if (t < 93) {
      const WordPair& p = pick(lex_.nationalities);
      word("he"); word("speaks"); word(p.b); word("very"); word("well");
    } else if (t < 95) {  // family binding
      const WordPair& p = pick(lex_.family);
      word("the"); word(p.a); word("and"); word(p.b); word("arrived");
    } else if (t < 96) {  // gender cues
      const WordPair& p = pick(lex_.family);
      word("the"); word(p.a); word("said"); word("he"); word("was");
      word(pick(lex_.adj_adverb).a);
    } else if (t < 97) {
      const WordPair& p = pick(lex_.family);
      word("the"); word(p.b); word("said"); word("she"); word("was");
      word(pick(lex_.adj_adverb).a);
    } else if (t < 98) {  // years and numbers feed the digit characters
      const WordPair& v = pick(lex_.past_tense);
      word("in"); number(1950, 2019); word("the"); word(pick(lex_.plurals).a);
      word(v.b);
    } else if (t < 99) {
      word("chapter"); number(2, 40); word("covers"); word("the");
      word(pick(lex_.plurals).a);
    } else {
      word("it"); word("cost"); number(2, 99); word("dollars"); word("in");
      number(1950, 2019);
    }
    end();
  }

 private:
  std::ofstream& out_;
  Rng& rng_;
  const Lexicon& lex_;
  std::string buffer_;
  std::uint64_t tokens_ = 0;
};

}  // namespace

void write_corpus(const std::string& path, std::uint64_t target_tokens,
                  std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for write: " + path);
  Rng rng(seed);
  SentenceWriter writer(out, rng, lexicon());
  while (writer.tokens_written() < target_tokens) writer.sentence();
  if (!out) throw Error("I/O error while writing corpus: " + path);
}

std::vector<std::pair<std::string, std::string>> write_bigram_corpus(
    const std::string& path, std::int32_t n_bigrams, std::int32_t repetitions,
    std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for write: " + path);

  std::vector<std::pair<std::string, std::string>> bigrams;
  bigrams.reserve(static_cast<std::size_t>(n_bigrams));
  char buf[32];
  for (std::int32_t i = 0; i < n_bigrams; ++i) {
    std::snprintf(buf, sizeof(buf), "ua%03d", i);
    std::string left = buf;
    std::snprintf(buf, sizeof(buf), "ub%03d", i);
    bigrams.emplace_back(left, buf);
  }
  std::vector<std::string> fillers;
  for (int i = 0; i < 40; ++i) {
    std::snprintf(buf, sizeof(buf), "f%02d", i);
    fillers.emplace_back(buf);
  }

  Rng rng(seed);
  auto filler_run = [&](std::string& line) {
    const std::uint64_t n = 2 + rng.uniform_below(4);
    for (std::uint64_t i = 0; i < n; ++i) {
      line += fillers[rng.uniform_below(fillers.size())];
      line += ' ';
    }
  };
  // One occurrence of every bigram per round, shuffled-ish by round offset.
  for (std::int32_t rep = 0; rep < repetitions; ++rep) {
    for (std::int32_t i = 0; i < n_bigrams; ++i) {
      const auto& bg = bigrams[static_cast<std::size_t>(
          (i + rep * 17) % n_bigrams)];
      std::string line;
      filler_run(line);
      line += bg.first;
      line += ' ';
      line += bg.second;
      line += ' ';
      filler_run(line);
      line.back() = '\n';
      out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
  }
  if (!out) throw Error("I/O error while writing bigram corpus: " + path);
  return bigrams;
}

}  // namespace penn::datagen
