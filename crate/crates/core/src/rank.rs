//! Ranking design methods by their oracle-scored batches and quantifying
//! agreement between rankings from different evaluators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::format_real;
use crate::lab::Oracle;
use crate::seq::Sequence;
use crate::stats::{mean, quantile_sorted, sample_std, sorted};

/// One design method's sampled batch for one design seed.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodBatch {
    pub method_name: String,
    pub sequences: Vec<Sequence>,
    pub design_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchScores {
    pub method_name: String,
    pub design_seed: u64,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticKind {
    Max,
    Mean,
    Median,
}

impl StatisticKind {
    pub fn apply(self, scores: &[f64]) -> f64 {
        match self {
            StatisticKind::Max => scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            StatisticKind::Mean => mean(scores),
            StatisticKind::Median => quantile_sorted(&sorted(scores.iter().copied()), 0.5),
        }
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatisticKind::Max => "max",
            StatisticKind::Mean => "mean",
            StatisticKind::Median => "median",
        })
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(StatisticKind::Max),
            "mean" => Ok(StatisticKind::Mean),
            "median" => Ok(StatisticKind::Median),
            other => Err(Error::InvalidParameter(format!("unknown statistic '{other}'"))),
        }
    }
}

/// How batches from several design seeds collapse into one value per method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedAggregation {
    /// Statistic per design seed, averaged over seeds.
    #[default]
    MeanOfSeeds,
    /// Statistic over all seeds' scores pooled together.
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub method: String,
    pub statistic: f64,
    /// Mean of all scores; first tie-break.
    pub mean: f64,
}

/// Methods in descending order of `statistic`; ties go to the higher mean,
/// then to the lexicographically smaller name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub evaluator_id: String,
    pub statistic_kind: StatisticKind,
    pub rows: Vec<RankRow>,
}

impl RankTable {
    fn from_rows(evaluator_id: &str, statistic_kind: StatisticKind, mut rows: Vec<RankRow>) -> Self {
        rows.sort_by(|a, b| {
            b.statistic
                .total_cmp(&a.statistic)
                .then_with(|| b.mean.total_cmp(&a.mean))
                .then_with(|| a.method.cmp(&b.method))
        });
        Self {
            evaluator_id: evaluator_id.to_string(),
            statistic_kind,
            rows,
        }
    }

    pub fn methods(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.method.as_str()).collect()
    }

    /// 1-based rank of `method`.
    pub fn rank_of(&self, method: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.method == method).map(|p| p + 1)
    }
}

/// Scores every batch, preserving batch and sequence order.
pub fn score_batches(batches: &[MethodBatch], oracle: &dyn Oracle) -> Result<Vec<BatchScores>> {
    batches
        .iter()
        .map(|batch| {
            let scores = batch
                .sequences
                .iter()
                .enumerate()
                .map(|(index, seq)| {
                    oracle.check(seq).map_err(|reason| Error::IncompatibleSequence {
                        method: batch.method_name.clone(),
                        index,
                        reason,
                    })?;
                    Ok(oracle.predict_symbols(&seq.indices().collect::<Vec<_>>()))
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(BatchScores {
                method_name: batch.method_name.clone(),
                design_seed: batch.design_seed,
                scores,
            })
        })
        .collect()
}

/// All scores per method, design seeds concatenated in input order.
pub fn pool_by_method(scores: &[BatchScores]) -> BTreeMap<String, Vec<f64>> {
    let mut pooled: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for b in scores {
        pooled.entry(b.method_name.clone()).or_default().extend(&b.scores);
    }
    pooled
}

pub fn rank_methods(
    scores: &BTreeMap<String, Vec<f64>>,
    statistic_kind: StatisticKind,
    evaluator_id: &str,
) -> Result<RankTable> {
    if scores.is_empty() {
        return Err(Error::Empty("score map"));
    }
    let rows = scores
        .iter()
        .map(|(method, s)| {
            if s.is_empty() {
                return Err(Error::MethodMismatch(format!("method '{method}' has no scores")));
            }
            Ok(RankRow {
                method: method.clone(),
                statistic: statistic_kind.apply(s),
                mean: mean(s),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankTable::from_rows(evaluator_id, statistic_kind, rows))
}

/// Ranks methods whose batches come from several design seeds.
pub fn rank_seeded(
    scores: &[BatchScores],
    statistic_kind: StatisticKind,
    aggregation: SeedAggregation,
    evaluator_id: &str,
) -> Result<RankTable> {
    let pooled = pool_by_method(scores);
    match aggregation {
        SeedAggregation::Pooled => rank_methods(&pooled, statistic_kind, evaluator_id),
        SeedAggregation::MeanOfSeeds => {
            if pooled.is_empty() {
                return Err(Error::Empty("score map"));
            }
            let mut per_seed: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
            for b in scores {
                if b.scores.is_empty() {
                    return Err(Error::MethodMismatch(format!(
                        "method '{}' seed {} has no scores",
                        b.method_name, b.design_seed
                    )));
                }
                per_seed
                    .entry(b.method_name.as_str())
                    .or_default()
                    .push(statistic_kind.apply(&b.scores));
            }
            let rows = pooled
                .iter()
                .map(|(method, all)| RankRow {
                    method: method.clone(),
                    statistic: mean(&per_seed[method.as_str()]),
                    mean: mean(all),
                })
                .collect();
            Ok(RankTable::from_rows(evaluator_id, statistic_kind, rows))
        }
    }
}

/// Kendall tau-b between two paired samples: `(P - Q) / sqrt((P + Q + T) (P + Q + U))`,
/// with `T` and `U` the pairs tied only in `x` and only in `y`.
pub fn tau_b(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let (mut concordant, mut discordant, mut ties_x, mut ties_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            match (x[i].total_cmp(&x[j]), y[i].total_cmp(&y[j])) {
                (Ordering::Equal, Ordering::Equal) => {}
                (Ordering::Equal, _) => ties_x += 1,
                (_, Ordering::Equal) => ties_y += 1,
                (a, b) if a == b => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let denom = (((concordant + discordant + ties_x) * (concordant + discordant + ties_y)) as f64).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    (concordant - discordant) as f64 / denom
}

fn method_set(table: &RankTable) -> BTreeSet<&str> {
    table.rows.iter().map(|r| r.method.as_str()).collect()
}

fn check_same_methods(a: &RankTable, b: &RankTable) -> Result<()> {
    let (sa, sb) = (method_set(a), method_set(b));
    if sa.len() != a.rows.len() || sb.len() != b.rows.len() {
        return Err(Error::MethodMismatch("duplicate method names".into()));
    }
    if sa != sb {
        let diff: Vec<&str> = sa.symmetric_difference(&sb).copied().collect();
        return Err(Error::MethodMismatch(format!(
            "'{}' and '{}' differ on {}",
            a.evaluator_id,
            b.evaluator_id,
            diff.join(", ")
        )));
    }
    Ok(())
}

/// Kendall tau-b between the two tables' orderings.
pub fn kendall_tau(a: &RankTable, b: &RankTable) -> Result<f64> {
    check_same_methods(a, b)?;
    let x: Vec<f64> = a.rows.iter().enumerate().map(|(i, _)| i as f64).collect();
    let y: Vec<f64> = a
        .rows
        .iter()
        .map(|r| b.rank_of(&r.method).expect("same method set") as f64)
        .collect();
    Ok(tau_b(&x, &y))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodRankStats {
    pub method: String,
    /// 1-based rank under each evaluator, in evaluator order.
    pub ranks: Vec<usize>,
    pub mean_rank: f64,
    pub rank_std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub evaluators: Vec<String>,
    pub mean_pairwise_tau: f64,
    pub pairwise_tau_matrix: Vec<Vec<f64>>,
    /// Sorted by mean rank, then name.
    pub methods: Vec<MethodRankStats>,
    pub modal_top_method: String,
    /// Fraction of evaluators whose top method is the modal one.
    pub top1_agreement: f64,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `method,<evaluator...>,mean_rank,rank_std` with one row per method.
    pub fn write_rank_matrix_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "method,{},mean_rank,rank_std", self.evaluators.join(","))?;
        for m in &self.methods {
            let ranks: Vec<String> = m.ranks.iter().map(usize::to_string).collect();
            writeln!(
                w,
                "{},{},{},{}",
                m.method,
                ranks.join(","),
                format_real(m.mean_rank),
                format_real(m.rank_std)
            )?;
        }
        Ok(())
    }
}

pub fn consistency_report(tables: &[RankTable]) -> Result<ConsistencyReport> {
    if tables.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "consistency needs at least 2 rank tables, got {}",
            tables.len()
        )));
    }
    for t in &tables[1..] {
        check_same_methods(&tables[0], t)?;
    }
    let n = tables.len();
    let mut matrix = vec![vec![1.0; n]; n];
    let mut pair_sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let tau = kendall_tau(&tables[i], &tables[j])?;
            matrix[i][j] = tau;
            matrix[j][i] = tau;
            pair_sum += tau;
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;

    let mut methods: Vec<MethodRankStats> = tables[0]
        .rows
        .iter()
        .map(|row| {
            let ranks: Vec<usize> = tables
                .iter()
                .map(|t| t.rank_of(&row.method).expect("same method set"))
                .collect();
            let as_f64: Vec<f64> = ranks.iter().map(|&r| r as f64).collect();
            MethodRankStats {
                method: row.method.clone(),
                mean_rank: mean(&as_f64),
                rank_std: sample_std(&as_f64),
                ranks,
            }
        })
        .collect();
    methods.sort_by(|a, b| {
        a.mean_rank
            .total_cmp(&b.mean_rank)
            .then_with(|| a.method.cmp(&b.method))
    });

    let mut top_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in tables {
        *top_counts.entry(t.rows[0].method.as_str()).or_default() += 1;
    }
    // Strict `>` over name-ordered keys: ties go to the first name.
    let (modal, count) = top_counts
        .iter()
        .fold(("", 0usize), |best, (&m, &c)| if c > best.1 { (m, c) } else { best });

    Ok(ConsistencyReport {
        evaluators: tables.iter().map(|t| t.evaluator_id.clone()).collect(),
        mean_pairwise_tau: pair_sum / pairs,
        pairwise_tau_matrix: matrix,
        methods,
        modal_top_method: modal.to_string(),
        top1_agreement: count as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{synth_landscape, ConstantOracle, OracleModel};
    use crate::seq::Alphabet;
    use proptest::prelude::*;

    fn scores(pairs: &[(&str, &[f64])]) -> BTreeMap<String, Vec<f64>> {
        pairs.iter().map(|(m, s)| (m.to_string(), s.to_vec())).collect()
    }

    fn table_from_order(id: &str, order: &[&str]) -> RankTable {
        let n = order.len();
        RankTable {
            evaluator_id: id.to_string(),
            statistic_kind: StatisticKind::Max,
            rows: order
                .iter()
                .enumerate()
                .map(|(i, m)| RankRow {
                    method: m.to_string(),
                    statistic: (n - i) as f64,
                    mean: 0.0,
                })
                .collect(),
        }
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("m{i:02}")).collect()
    }

    // Concordant minus discordant pairs over n(n-1)/2, counted directly.
    fn brute_force_tau(a: &[&str], b: &[&str]) -> f64 {
        let pos = |order: &[&str], m: &str| order.iter().position(|x| *x == m).unwrap() as i64;
        let n = a.len();
        let mut s = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                let da = pos(a, a[i]) - pos(a, a[j]);
                let db = pos(b, a[i]) - pos(b, a[j]);
                s += (da * db).signum();
            }
        }
        s as f64 / (n * (n - 1) / 2) as f64
    }

    #[test]
    fn constant_oracle_scores() {
        let batch = MethodBatch {
            method_name: "m".into(),
            sequences: vec![Sequence::dna("ACGT").unwrap(), Sequence::dna("TTTT").unwrap()],
            design_seed: 0,
        };
        let oracle = ConstantOracle {
            value: 0.3,
            alphabet: Alphabet::Dna,
            length: None,
        };
        let out = score_batches(&[batch], &oracle).unwrap();
        assert_eq!(out[0].scores, vec![0.3, 0.3]);
    }

    #[test]
    fn lookup_scores_equal_ground_truth() {
        let landscape = synth_landscape(1, 2, 5).unwrap();
        let idx = [0usize, 17, 400, 1023];
        let batch = MethodBatch {
            method_name: "m".into(),
            sequences: idx.iter().map(|&i| landscape.sequence_at(i)).collect(),
            design_seed: 0,
        };
        let out = score_batches(&[batch], &OracleModel::lookup(&landscape)).unwrap();
        let truth: Vec<f64> = idx.iter().map(|&i| landscape.score(i)).collect();
        assert_eq!(out[0].scores, truth);
    }

    #[test]
    fn wrong_length_names_method_and_index() {
        let landscape = synth_landscape(1, 1, 4).unwrap();
        let batch = MethodBatch {
            method_name: "cbas".into(),
            sequences: vec![Sequence::dna("ACGT").unwrap(), Sequence::dna("ACG").unwrap()],
            design_seed: 0,
        };
        let err = score_batches(&[batch], &OracleModel::lookup(&landscape)).unwrap_err();
        assert!(matches!(err, Error::IncompatibleSequence { ref method, index: 1, .. } if method == "cbas"));
    }

    #[test]
    fn ranking_by_max_with_tie_breaks() {
        let t = rank_methods(
            &scores(&[("A", &[0.9, 0.1]), ("B", &[0.5, 0.5])]),
            StatisticKind::Max,
            "e",
        )
        .unwrap();
        assert_eq!(t.methods(), ["A", "B"]);
        let t = rank_methods(&scores(&[("B", &[0.5, 0.4]), ("A", &[0.5])]), StatisticKind::Max, "e").unwrap();
        assert_eq!(t.methods(), ["A", "B"]);
        let t = rank_methods(&scores(&[("B", &[0.5]), ("A", &[0.5])]), StatisticKind::Max, "e").unwrap();
        assert_eq!(t.methods(), ["A", "B"]);
        assert!(rank_methods(&scores(&[("A", &[])]), StatisticKind::Max, "e").is_err());
        assert!(rank_methods(&BTreeMap::new(), StatisticKind::Max, "e").is_err());
    }

    #[test]
    fn other_statistics() {
        let s = scores(&[("A", &[0.0, 0.0, 1.0]), ("B", &[0.4, 0.5, 0.6])]);
        assert_eq!(rank_methods(&s, StatisticKind::Max, "e").unwrap().methods(), ["A", "B"]);
        assert_eq!(
            rank_methods(&s, StatisticKind::Median, "e").unwrap().methods(),
            ["B", "A"]
        );
        assert_eq!(
            rank_methods(&s, StatisticKind::Mean, "e").unwrap().methods(),
            ["B", "A"]
        );
    }

    #[test]
    fn seed_aggregation_modes_differ() {
        let b = |m: &str, seed, s: &[f64]| BatchScores {
            method_name: m.into(),
            design_seed: seed,
            scores: s.to_vec(),
        };
        // A has one lucky seed; B is consistently good.
        let batches = vec![
            b("A", 0, &[1.0]),
            b("A", 1, &[0.1]),
            b("B", 0, &[0.7]),
            b("B", 1, &[0.7]),
        ];
        let mean_of_seeds = rank_seeded(&batches, StatisticKind::Max, SeedAggregation::MeanOfSeeds, "e").unwrap();
        assert_eq!(mean_of_seeds.methods(), ["B", "A"]);
        assert!((mean_of_seeds.rows[1].statistic - 0.55).abs() < 1e-12);
        let pooled = rank_seeded(&batches, StatisticKind::Max, SeedAggregation::Pooled, "e").unwrap();
        assert_eq!(pooled.methods(), ["A", "B"]);
    }

    #[test]
    fn twelve_methods_five_seeds_shape() {
        let methods = names(12);
        let tables: Vec<RankTable> = (0..5u64)
            .map(|seed| {
                let s: BTreeMap<String, Vec<f64>> = methods
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let jitter = ((seed * 31 + i as u64 * 17) % 7) as f64 * 0.02;
                        (m.clone(), vec![i as f64 * 0.01 + jitter])
                    })
                    .collect();
                rank_methods(&s, StatisticKind::Max, &format!("oracle-seed{seed}")).unwrap()
            })
            .collect();
        assert!(tables.iter().all(|t| t.rows.len() == 12));
        let report = consistency_report(&tables).unwrap();
        assert_eq!(report.pairwise_tau_matrix.len(), 5);
    }

    #[test]
    fn tau_examples() {
        let order: Vec<String> = names(12);
        let a: Vec<&str> = order.iter().map(String::as_str).collect();
        let mut reversed = a.clone();
        reversed.reverse();
        let mut swapped = a.clone();
        swapped.swap(4, 5);
        let ta = table_from_order("a", &a);
        assert_eq!(kendall_tau(&ta, &ta).unwrap(), 1.0);
        assert_eq!(kendall_tau(&ta, &table_from_order("r", &reversed)).unwrap(), -1.0);
        let tau = kendall_tau(&ta, &table_from_order("s", &swapped)).unwrap();
        assert!((tau - 64.0 / 66.0).abs() <= 1e-12);
        assert_eq!(brute_force_tau(&a, &swapped), 64.0 / 66.0);
    }

    #[test]
    fn tau_b_handles_ties() {
        // scipy.stats.kendalltau([1, 2, 2, 3], [1, 2, 3, 3]) = 0.8
        assert!((tau_b(&[1.0, 2.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 3.0]) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn mismatched_methods_rejected() {
        let a = table_from_order("a", &["x", "y"]);
        let b = table_from_order("b", &["x", "z"]);
        assert!(matches!(kendall_tau(&a, &b), Err(Error::MethodMismatch(_))));
        assert!(consistency_report(&[a.clone(), b]).is_err());
        assert!(consistency_report(&[a]).is_err());
    }

    #[test]
    fn identical_tables_fully_consistent() {
        let t = table_from_order("a", &["x", "y", "z"]);
        let tables: Vec<RankTable> = (0..5)
            .map(|i| RankTable {
                evaluator_id: format!("e{i}"),
                ..t.clone()
            })
            .collect();
        let r = consistency_report(&tables).unwrap();
        assert_eq!(r.mean_pairwise_tau, 1.0);
        assert!(r.methods.iter().all(|m| m.rank_std == 0.0));
        assert_eq!(r.top1_agreement, 1.0);
        assert_eq!(r.modal_top_method, "x");
    }

    #[test]
    fn three_different_winners() {
        let tables = vec![
            table_from_order("e0", &["a", "b", "c"]),
            table_from_order("e1", &["b", "a", "c"]),
            table_from_order("e2", &["c", "a", "b"]),
            table_from_order("e3", &["a", "c", "b"]),
            table_from_order("e4", &["b", "c", "a"]),
        ];
        let r = consistency_report(&tables).unwrap();
        assert!(r.top1_agreement <= 3.0 / 5.0);
        assert_eq!(r.top1_agreement, 2.0 / 5.0);
        assert_eq!(r.modal_top_method, "a");
    }

    #[test]
    fn adjacent_swap_report() {
        let order = names(12);
        let a: Vec<&str> = order.iter().map(String::as_str).collect();
        let mut b = a.clone();
        b.swap(6, 7);
        let r = consistency_report(&[table_from_order("a", &a), table_from_order("b", &b)]).unwrap();
        assert!((r.mean_pairwise_tau - 64.0 / 66.0).abs() <= 1e-12);
        let moved: Vec<&MethodRankStats> = r.methods.iter().filter(|m| m.rank_std > 0.0).collect();
        assert_eq!(moved.len(), 2);
        for m in moved {
            assert!((m.rank_std - 0.5 * 2f64.sqrt()).abs() < 1e-12);
        }
        assert_eq!(r.pairwise_tau_matrix[0][0], 1.0);
        assert_eq!(r.pairwise_tau_matrix[0][1], r.pairwise_tau_matrix[1][0]);

        let mut csv = Vec::new();
        r.write_rank_matrix_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("method,a,b,mean_rank,rank_std\nm00,1,1,1,0\n"));
    }

    fn random_scores(n_methods: usize, n_scores: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, n_scores), n_methods)
    }

    proptest! {
        #[test]
        fn monotone_transform_preserves_ranking(data in random_scores(8, 5)) {
            let plain: BTreeMap<String, Vec<f64>> = data.iter().enumerate().map(|(i, s)| (format!("m{i}"), s.clone())).collect();
            let warped: BTreeMap<String, Vec<f64>> = plain.iter()
                .map(|(m, s)| (m.clone(), s.iter().map(|x| (3.0 * x).exp() + x * x * x).collect()))
                .collect();
            let a = rank_methods(&plain, StatisticKind::Max, "a").unwrap();
            let b = rank_methods(&warped, StatisticKind::Max, "b").unwrap();
            prop_assert_eq!(a.methods(), b.methods());
        }

        #[test]
        fn tau_symmetric_and_matches_brute_force(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let order = names(9);
            let mut a: Vec<&str> = order.iter().map(String::as_str).collect();
            let mut b = a.clone();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let (ta, tb) = (table_from_order("a", &a), table_from_order("b", &b));
            let tau = kendall_tau(&ta, &tb).unwrap();
            prop_assert_eq!(tau, kendall_tau(&tb, &ta).unwrap());
            prop_assert!((tau - brute_force_tau(&a, &b)).abs() < 1e-12);
            prop_assert_eq!(tau == 1.0, a == b);
        }

        #[test]
        fn permuting_tables_only_relabels(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let order = names(6);
            let tables: Vec<RankTable> = (0..4).map(|i| {
                let mut o: Vec<&str> = order.iter().map(String::as_str).collect();
                o.shuffle(&mut rng);
                table_from_order(&format!("e{i}"), &o)
            }).collect();
            let mut permuted = tables.clone();
            permuted.reverse();
            let a = consistency_report(&tables).unwrap();
            let b = consistency_report(&permuted).unwrap();
            prop_assert!((a.mean_pairwise_tau - b.mean_pairwise_tau).abs() < 1e-12);
            prop_assert_eq!(a.top1_agreement, b.top1_agreement);
            for (x, y) in a.methods.iter().zip(&b.methods) {
                prop_assert_eq!(&x.method, &y.method);
                prop_assert!((x.mean_rank - y.mean_rank).abs() < 1e-12);
                prop_assert!((x.rank_std - y.rank_std).abs() < 1e-12);
            }
        }

        #[test]
        fn adding_universal_loser_keeps_pairwise_relations(data in random_scores(6, 3), seeds in 2usize..5) {
            let tables: Vec<RankTable> = (0..seeds).map(|e| {
                let s: BTreeMap<String, Vec<f64>> = data.iter().enumerate()
                    .map(|(i, v)| (format!("m{i}"), v.iter().map(|x| (x + 0.1 * e as f64 * i as f64) % 1.0).collect()))
                    .collect();
                rank_methods(&s, StatisticKind::Max, &format!("e{e}")).unwrap()
            }).collect();
            let extended: Vec<RankTable> = tables.iter().map(|t| {
                let mut rows = t.rows.clone();
                rows.push(RankRow { method: "loser".into(), statistic: -1.0, mean: -1.0 });
                RankTable::from_rows(&t.evaluator_id, t.statistic_kind, rows)
            }).collect();
            for (t, x) in tables.iter().zip(&extended) {
                for a in t.methods() {
                    for b in t.methods() {
                        let before = t.rank_of(a) < t.rank_of(b);
                        let after = x.rank_of(a) < x.rank_of(b);
                        prop_assert_eq!(before, after);
                    }
                }
                prop_assert_eq!(x.rows.last().unwrap().method.as_str(), "loser");
            }
            for i in 0..tables.len() {
                for j in i + 1..tables.len() {
                    let before = kendall_tau(&tables[i], &tables[j]).unwrap();
                    let after = kendall_tau(&extended[i], &extended[j]).unwrap();
                    // The loser pairs are all concordant, so tau can only rise.
                    prop_assert!(after >= before - 1e-12);
                }
            }
        }
    }
}
