use rayon::prelude::*;

use super::apex::{table1, ApexCover};
use super::report::VerificationReport;
use super::verify::{random_cover, Verifier, VerifyOptions};
use crate::error::Result;
use crate::instance::InstanceSpec;

/// Where a lemma about `K_1 ∨ H` takes its cover from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApexSource {
    Table1,
    /// A cover of `inner ∨ K_1`: natural when `seed` is `None`, otherwise
    /// a seeded random perfect cover.
    Join {
        inner: InstanceSpec,
        k: u32,
        seed: Option<u64>,
    },
}

impl ApexSource {
    fn key(&self) -> String {
        match self {
            ApexSource::Table1 => "table1".into(),
            ApexSource::Join { inner, k, seed } => match seed {
                None => format!("join:1:{inner} k={k} natural"),
                Some(s) => format!("join:1:{inner} k={k} cover-seed={s}"),
            },
        }
    }

    fn build(&self) -> Result<ApexCover> {
        match self {
            ApexSource::Table1 => Ok(table1()?.1),
            ApexSource::Join { inner, k, seed } => {
                let join = inner.generate()?.hypergraph.join_clique(1)?;
                let cover = random_cover(&join, *k, *seed)?;
                ApexCover::from_tagged(join, cover)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditTask {
    Gir1(InstanceSpec),
    EvenCyc(InstanceSpec, usize),
    Prop1p1(InstanceSpec, usize),
    Lemma9(InstanceSpec, usize),
    JoinIdentity(InstanceSpec, usize, Vec<i64>),
    Level(ApexSource),
    Lemma2p1(InstanceSpec, u32),
    Lemma2p2(ApexSource),
    Th2p1(InstanceSpec, Vec<i64>),
    Co2p1(InstanceSpec, usize, Vec<i64>),
    Ans3(InstanceSpec, usize, Vec<i64>),
}

fn ks(ks: &[i64]) -> String {
    ks.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl AuditTask {
    /// The instance key of the task's report.
    pub fn key(&self) -> String {
        match self {
            AuditTask::Gir1(s) => s.to_string(),
            AuditTask::EvenCyc(s, e) | AuditTask::Prop1p1(s, e) | AuditTask::Lemma9(s, e) => {
                format!("{s} e={e}")
            }
            AuditTask::JoinIdentity(s, p, k) => format!("{s} p={p} k={}", ks(k)),
            AuditTask::Level(a) | AuditTask::Lemma2p2(a) => a.key(),
            AuditTask::Lemma2p1(s, k) => format!("{s} k={k}"),
            AuditTask::Th2p1(s, k) => format!("{s} p=1 k={}", ks(k)),
            AuditTask::Co2p1(s, p, k) | AuditTask::Ans3(s, p, k) => {
                format!("{s} p={p} k={}", ks(k))
            }
        }
    }

    pub fn run(&self, v: &mut Verifier) -> Result<VerificationReport> {
        let key = self.key();
        let gen = |s: &InstanceSpec| s.generate().map(|i| i.hypergraph);
        match self {
            AuditTask::Gir1(s) => v.gir1(&key, &gen(s)?),
            AuditTask::EvenCyc(s, e) => v.evencyc(&key, &gen(s)?, *e),
            AuditTask::Prop1p1(s, e) => v.prop1p1(&key, &gen(s)?, *e),
            AuditTask::Lemma9(s, e) => v.lemma9(&key, &gen(s)?, *e, None),
            AuditTask::JoinIdentity(s, p, k) => v.join_identity(&key, &gen(s)?, *p, k),
            AuditTask::Level(a) => v.level(&key, &a.build()?),
            AuditTask::Lemma2p1(s, k) => v.lemma2p1(&key, &gen(s)?, *k),
            AuditTask::Lemma2p2(a) => v.lemma2p2(&key, &a.build()?),
            AuditTask::Th2p1(s, k) => v.th2p1(&key, &gen(s)?, k),
            AuditTask::Co2p1(s, p, k) => v.co2p1(&key, &gen(s)?, *p, k),
            AuditTask::Ans3(s, p, k) => v.ans3(&key, &gen(s)?, *p, k),
        }
    }
}

/// The desk-scale corpus; `seed` drives the random generators and covers.
pub fn default_corpus(seed: u64) -> Vec<AuditTask> {
    use AuditTask::*;
    let spec = |s: &str| -> InstanceSpec { s.parse().expect("valid corpus descriptor") };
    let edge3 = spec("edges:0-1-2");
    let tree = InstanceSpec::Hypertree { r: 3, m: 2, seed };
    let mut tasks = vec![
        Gir1(spec("cycle:2:4")),
        Gir1(spec("cycle:2:6")),
        Gir1(spec("cycle:3:4")),
        Gir1(spec("cycle:3:3")),
        Gir1(tree.clone()),
        EvenCyc(spec("cycle:2:4"), 0),
        EvenCyc(spec("cycle:2:6"), 0),
        EvenCyc(spec("cycle:3:4"), 0),
        EvenCyc(spec("edges:1-2-3,1-2"), 0),
        EvenCyc(spec("cycle:2:3"), 0),
        Prop1p1(spec("cycle:2:4"), 0),
        Prop1p1(spec("edges:1-2-3,1-2"), 0),
        Prop1p1(spec("complete:3"), 0),
        Lemma9(spec("complete:3"), 0),
        Lemma9(spec("cycle:2:4"), 0),
        Lemma9(spec("cycle:3:3"), 0),
        Lemma9(tree.clone(), 0),
        Level(ApexSource::Table1),
        Lemma2p1(edge3.clone(), 2),
        Lemma2p1(edge3.clone(), 3),
        Lemma2p2(ApexSource::Table1),
        Th2p1(edge3.clone(), vec![6]),
        Th2p1(spec("complete:3"), vec![5]),
        Co2p1(edge3.clone(), 1, vec![7]),
        Ans3(edge3.clone(), 1, vec![3]),
        Ans3(tree.clone(), 1, vec![3]),
    ];
    for inner in [
        spec("cycle:2:4"),
        edge3.clone(),
        tree.clone(),
        InstanceSpec::Random { n: 5, m: 4, seed },
    ] {
        for p in 1..=3 {
            tasks.push(JoinIdentity(inner.clone(), p, vec![p as i64 + 2]));
        }
    }
    for cover_seed in [None, Some(seed), Some(seed + 1)] {
        for inner in [edge3.clone(), tree.clone()] {
            tasks.push(Lemma2p2(ApexSource::Join {
                inner,
                k: 6,
                seed: cover_seed,
            }));
        }
    }
    tasks
}

/// Runs every task in parallel, each with its own memo, and sorts the
/// reports by claim and instance.
pub fn run_audit(tasks: &[AuditTask], options: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut reports = tasks
        .par_iter()
        .map(|t| t.run(&mut Verifier::new(options.clone())))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| (a.claim, &a.instance).cmp(&(b.claim, &b.instance)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_gives_no_reports() {
        assert!(run_audit(&[], &VerifyOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn keys_are_unique() {
        let corpus = default_corpus(1);
        let mut keys: Vec<_> = corpus
            .iter()
            .map(|t| (std::mem::discriminant(t), t.key()))
            .collect();
        let n = keys.len();
        keys.sort_by(|a, b| a.1.cmp(&b.1));
        keys.dedup();
        assert_eq!(keys.len(), n);
    }
}
