//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chrono::{TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use neolex_core::candidates::{extract_candidates, ReferenceLists, RejectReason, Status};
use neolex_core::corpus::{corpus_stats, CorpusDocument, DocKind, LanguageConfig};
use neolex_core::freqcount::{count_shard, threshold_filter, FreqMap, FreqRecord};
use neolex_core::labels::{DerivType, Labels, Topic};
use neolex_core::lexicon::{self, AggregateReport, ExportFormat, ExportOrder};
use neolex_core::morphodict::{MorphoDict, Pos};
use neolex_core::resources;
use neolex_core::review::{self, ReviewDecision, ReviewService, ReviewState};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

const MINI_DICT: &str = include_str!("../data/dict/mini.tsv");
const FUNNEL: &str = include_str!("../data/fixture/funnel.tsv");
const FUNNEL_REFERENCE: &str = include_str!("../data/fixture/funnel_reference.txt");

/// Raw fixture rows, split by hand so the recount does not share code with
/// the crate's parser.
fn raw_fixture() -> Vec<Vec<&'static str>> {
    resources::GOLD_LEXICON
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split('\t').collect())
        .collect()
}

fn derivation_fidelity() -> Outcome {
    let start = Instant::now();
    let classifier = resources::classifier();
    let entries = resources::gold_lexicon();
    let mut exact = 0;
    let mut derived = 0;
    let mut misses = Vec::new();
    for e in &entries {
        let a = classifier.derivation(&e.word, e.pos);
        if a.deriv_type.is_derived() {
            derived += 1;
        }
        if (a.deriv_type, &a.model) == (e.deriv_kind(), &e.model) {
            exact += 1;
        } else {
            misses.push(e.word.clone());
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{exact}/168 exact, {derived} derived, {:.0} ms (incl. inventory load)", ms(elapsed));
    if exact == 168 && derived == 67 && elapsed < Duration::from_secs(1) {
        pass(detail)
    } else {
        fail(format!("{detail}; misses: {misses:?}"))
    }
}

fn loan_fidelity() -> Outcome {
    let classifier = resources::classifier();
    let overrides = resources::loan_overrides().len();
    let mut exact = 0;
    let mut misses = Vec::new();
    for e in resources::gold_lexicon() {
        let v = classifier.loan(&e.word, &classifier.derivation(&e.word, e.pos));
        if v.loan_type == e.loan_type {
            exact += 1;
        } else {
            misses.push(format!("{} ({} vs {})", e.word, v.loan_type, e.loan_type));
        }
    }
    let detail = format!("{exact}/168 exact with {overrides} overrides (limit 15)");
    if exact == 168 && overrides <= 15 {
        pass(detail)
    } else {
        fail(format!("{detail}; misses: {misses:?}"))
    }
}

fn aggregate_report() -> Outcome {
    let start = Instant::now();
    let entries = resources::gold_lexicon();
    let report = AggregateReport::new(&entries);
    let checks = lexicon::check_published_counts(&entries);
    let elapsed = start.elapsed();

    let rows = raw_fixture();
    let recount = |col: usize| {
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for r in &rows {
            let key = match (col, r[col]) {
                (4, "") => "Непроизводное",
                (5, "") => lexicon::NO_MODEL,
                (_, v) => v,
            };
            *m.entry(key.to_string()).or_default() += 1;
        }
        m
    };
    let mut mismatched = Vec::new();
    for (name, col, got) in [
        ("pos", 1, &report.by_pos),
        ("topic", 2, &report.by_topic),
        ("loan_type", 3, &report.by_loan_type),
        ("deriv_type", 4, &report.by_deriv_type),
        ("model", 5, &report.by_model),
    ] {
        if &recount(col) != got {
            mismatched.push(name);
        }
    }
    let underived = rows.iter().filter(|r| r[4].is_empty()).count();
    if (report.underived_count, report.derived_count) != (underived, rows.len() - underived) {
        mismatched.push("derived/underived");
    }
    mismatched.extend(report.inconsistent_axes());

    let warnings: Vec<String> = checks.iter().filter_map(|c| c.warning()).collect();
    for w in &warnings {
        println!("    warning: {w}");
    }
    let required = ["nouns (N)", "verbs (V)", "adjectives (Adj)", "interjections (Interj)", "adverb/predicatives (Adv/Pred)",
        "noun modifiers (Nmod + Nmod/N)", "suffixation", "prefixation", "prefix+suffix derivation"];
    let required_checks: Vec<_> = checks.iter().filter(|c| required.contains(&c.claim.as_str())).collect();
    let required_ok = required_checks.len() == required.len() && required_checks.iter().all(|c| c.matches());
    let detail = format!(
        "recount {} axes, {}/{} published counts agree, {} warning(s), {:.1} ms",
        if mismatched.is_empty() { "matches on all" } else { "differs on some" },
        checks.iter().filter(|c| c.matches()).count(),
        checks.len(),
        warnings.len(),
        ms(elapsed)
    );
    if mismatched.is_empty() && required_ok && elapsed < Duration::from_secs(1) {
        pass(detail)
    } else {
        fail(format!("{detail}; mismatched: {mismatched:?}"))
    }
}

/// Forms with exactly one analysis.
fn unambiguous_forms(dict_text: &str) -> Vec<(String, String, Pos)> {
    let mut analyses: HashMap<&str, HashSet<(&str, &str)>> = HashMap::new();
    for line in dict_text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let c: Vec<&str> = line.split('\t').collect();
        analyses.entry(c[0]).or_default().insert((c[1], c[2]));
    }
    let mut out: Vec<_> = analyses
        .into_iter()
        .filter(|(_, a)| a.len() == 1)
        .map(|(form, a)| {
            let (lemma, pos) = a.into_iter().next().unwrap();
            (form.to_string(), lemma.to_string(), pos.parse().unwrap())
        })
        .collect();
    out.sort();
    out
}

fn canonical(map: &FreqMap) -> Vec<(String, Pos, bool, u64)> {
    map.sorted().into_iter().map(|(k, n)| (k.lemma.clone(), k.pos, k.in_dictionary, n)).collect()
}

fn counting_correctness() -> Outcome {
    let dict = MorphoDict::parse(MINI_DICT, "mini.tsv").unwrap();
    let forms = unambiguous_forms(MINI_DICT);
    let oov = ["лайкнуть", "репост", "скайп", "фейк", "мем", "дресс-код", "хайп", "твитить"];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut docs = Vec::new();
    let mut truth: HashMap<(String, Pos, bool), u64> = HashMap::new();
    let mut produced = 0;
    while produced < 10_000 {
        let len = rng.gen_range(1..=40).min(10_000 - produced);
        let mut words = Vec::with_capacity(len);
        for _ in 0..len {
            if rng.gen_bool(0.2) {
                let w = oov[rng.gen_range(0..oov.len())];
                words.push(w.to_string());
                *truth.entry((w.to_string(), Pos::Unknown, false)).or_default() += 1;
            } else {
                let (form, lemma, pos) = &forms[rng.gen_range(0..forms.len())];
                words.push(form.clone());
                *truth.entry((lemma.clone(), *pos, true)).or_default() += 1;
            }
        }
        produced += len;
        let kind = if rng.gen_bool(0.5) { DocKind::Post } else { DocKind::Comment };
        docs.push(CorpusDocument::new(format!("d{}", docs.len()), kind, words.join(" ")));
    }
    let mut expected: Vec<_> = truth.into_iter().map(|((l, p, d), n)| (l, p, d, n)).collect();
    expected.sort();

    let single = count_shard(&docs, &dict, None);
    if canonical(&single) != expected || single.total_tokens() != 10_000 {
        return fail("single-shard counts differ from the generation-time tally");
    }
    let reference = canonical(&single);
    for shards in [1usize, 2, 8] {
        let chunk = docs.len().div_ceil(shards);
        let parts: Vec<FreqMap> = docs.chunks(chunk).map(|c| count_shard(c, &dict, None)).collect();
        for _ in 0..20 {
            let mut order = parts.clone();
            order.shuffle(&mut rng);
            // Random fold shape: repeatedly merge two random maps.
            while order.len() > 1 {
                let i = rng.gen_range(0..order.len());
                let a = order.swap_remove(i);
                let j = rng.gen_range(0..order.len());
                let b = order.swap_remove(j);
                order.push(FreqMap::merge(a, b));
            }
            if canonical(&order[0]) != reference {
                return fail(format!("{shards} shards: merged result differs"));
            }
        }
        let parallel = neolex_core::freqcount::count_sharded(&docs, &dict, None, shards);
        if canonical(&parallel) != reference {
            return fail(format!("{shards} parallel shards differ"));
        }
    }
    pass(format!("10000 tokens, {} cells; shards 1/2/8 x 20 merge orders identical to brute force", reference.len()))
}

fn funnel() -> Outcome {
    let mut records = Vec::new();
    let mut manifest = HashSet::new();
    for line in FUNNEL.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let c: Vec<&str> = line.split('\t').collect();
        records.push(FreqRecord {
            lemma: c[0].to_string(),
            pos: Pos::Unknown,
            freq: c[1].parse().unwrap(),
            in_dictionary: false,
            contexts: Vec::new(),
        });
        if c[2] == "clean" {
            manifest.insert(c[0].to_string());
        }
    }
    let mut refs = ReferenceLists::new();
    refs.add("funnel", FUNNEL_REFERENCE);
    let out = extract_candidates(&records, resources::noise_lists(), &refs, resources::pos_overrides(), true);
    let pending: HashSet<String> = out.iter().filter(|c| c.status == Status::Pending).map(|c| c.lemma.clone()).collect();
    let unexplained = out
        .iter()
        .filter(|c| c.status == Status::Rejected && c.auto_flags.is_empty() && !c.in_reference)
        .count();
    let detail = format!("{} records -> {} pending (manifest {})", records.len(), pending.len(), manifest.len());
    if records.len() == 624 && pending == manifest && manifest.len() == 168 && unexplained == 0 && out.len() == 624 {
        pass(detail)
    } else {
        let leaked: Vec<_> = pending.difference(&manifest).collect();
        let lost: Vec<_> = manifest.difference(&pending).collect();
        fail(format!("{detail}; leaked {leaked:?}; lost {lost:?}"))
    }
}

fn homonym_shadowing() -> Outcome {
    let dict = MorphoDict::parse(MINI_DICT, "mini.tsv").unwrap();
    let texts = [
        "мне лайкнуть этот пост",
        "новый пост про город",
        "сделал перепост и пост удалили",
        "читать пост",
        "пост набрал лайки",
    ];
    let docs: Vec<_> = texts.iter().enumerate().map(|(i, t)| CorpusDocument::new(i.to_string(), DocKind::Post, *t)).collect();
    let map = count_shard(&docs, &dict, Some(&LanguageConfig::default()));
    let records = threshold_filter(&map, 1, true);
    let cands = extract_candidates(&records, resources::noise_lists(), &ReferenceLists::new(), resources::pos_overrides(), false);
    let has = |l: &str| cands.iter().any(|c| c.lemma == l);
    let counted = map.get("пост", Pos::N, true);
    if !has("пост") && has("лайкнуть") && has("перепост") && counted == 5 {
        pass(format!("пост counted {counted}x as a dictionary word, no candidate; лайкнуть and перепост are candidates"))
    } else {
        fail(format!("пост candidate present: {}, dictionary count {counted}", has("пост")))
    }
}

fn table1_stats() -> Outcome {
    let ten = "один два три четыре пять шесть семь восемь девять десять";
    let five = "раз два три четыре пять";
    let mut docs: Vec<_> = (0..4).map(|i| CorpusDocument::new(format!("p{i}"), DocKind::Post, ten)).collect();
    docs.extend((0..2).map(|i| CorpusDocument::new(format!("c{i}"), DocKind::Comment, five)));
    let s = corpus_stats(&docs, Some(&LanguageConfig::default()));
    let got = (s.n_posts, s.n_comments, s.n_texts, s.n_tokens_posts, s.n_tokens_comments, s.n_tokens_total);
    let ok = got == (4, 2, 6, 40, 10, 50) && s.mean_post_len == Some(10.0) && s.mean_comment_len == Some(5.0);
    let detail = format!(
        "texts {}, tokens {}, mean post {:?}, mean comment {:?}",
        s.n_texts, s.n_tokens_total, s.mean_post_len, s.mean_comment_len
    );
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn review_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cands_path = dir.path().join("candidates.json");
    let log_path = dir.path().join("decisions.jsonl");
    let entries = resources::gold_lexicon();
    review::write_candidates(&cands_path, &review::candidates_from_lexicon(&entries)).unwrap();
    let mut svc = ReviewService::open(&cands_path, &log_path).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let reasons = [RejectReason::ProperNoun, RejectReason::NonRussian, RejectReason::LemmatizerArtifact, RejectReason::InReference, RejectReason::Other];
    let base = Utc.with_ymd_and_hms(2014, 1, 1, 0, 0, 0).unwrap();
    for i in 0..500 {
        let e = &entries[rng.gen_range(0..entries.len())];
        let mut d = match rng.gen_range(0..4) {
            0 | 1 => ReviewDecision::accept(&e.word, review::entry_labels(e), "r1"),
            2 => ReviewDecision::reject(&e.word, reasons[rng.gen_range(0..reasons.len())], "r2"),
            _ if rng.gen_bool(0.5) => ReviewDecision::reopen(&e.word, "r1"),
            _ => ReviewDecision::relabel(
                &e.word,
                Labels { topic: Some(Topic::ALL[rng.gen_range(0..Topic::ALL.len())]), ..Labels::default() },
                "r2",
            ),
        };
        d.decided_at = base + chrono::Duration::minutes(i);
        if let Err(err) = svc.decide(d) {
            return fail(format!("decision {i} rejected: {err}"));
        }
    }
    let live = svc.state().hash();
    let first = review::load_state(&cands_path, &log_path).unwrap();
    let second = review::load_state(&cands_path, &log_path).unwrap();
    if first.hash() != second.hash() || first.hash() != live {
        return fail("replayed state hashes differ");
    }
    for format in [ExportFormat::Tsv, ExportFormat::Json] {
        let doc = first.export(format, ExportOrder::TopicWord);
        let parsed = lexicon::parse_document(&doc, format, "export").unwrap();
        if lexicon::write_document(&parsed, format) != doc {
            return fail(format!("{format:?} export does not round-trip"));
        }
    }

    // Accepting every row with its published labels reproduces the fixture.
    let mut all = ReviewState::new(review::candidates_from_lexicon(&entries)).unwrap();
    for e in &entries {
        all.apply(&ReviewDecision::accept(&e.word, review::entry_labels(e), "r1")).unwrap();
    }
    let exported = lexicon::parse_tsv(&all.export(ExportFormat::Tsv, ExportOrder::TopicWord), "export").unwrap();
    let mut fixture = entries.clone();
    lexicon::sort_entries(&mut fixture, ExportOrder::TopicWord);
    if exported != fixture {
        return fail("full-accept export differs from the fixture");
    }
    let accepted = first.count(Status::Accepted);
    let underived = exported.iter().filter(|e| e.deriv_type.is_none_or(|d| d == DerivType::Underived)).count();
    pass(format!(
        "500 decisions, replay x2 hash {}…, {accepted} accepted; TSV/JSON round-trip byte-identical; full-accept export = fixture ({underived} underived)",
        &live[..12]
    ))
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("derivation fidelity on the 168-word lexicon", derivation_fidelity),
        ("loan-type fidelity on the 168-word lexicon", loan_fidelity),
        ("aggregate report vs recount and published counts", aggregate_report),
        ("counting correctness and shard invariance", counting_correctness),
        ("624 -> 168 candidate funnel", funnel),
        ("homonym shadowing of пост", homonym_shadowing),
        ("corpus statistics on the 6-document fixture", table1_stats),
        ("review replay determinism and export round-trip", review_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
