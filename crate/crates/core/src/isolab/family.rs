use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::coset::TCoset;
use crate::combinatorics::counting::factorial;
use crate::combinatorics::permset::{lex_initial_segment, PermutationSet};
use crate::combinatorics::permutation::for_each_permutation;
use crate::error::{Error, Result};

/// A structured subset of `S_n`, described by kind and parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: usize,
    pub kind: FamilyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `T_{IJ} = {σ : σ(I) = J}`, points 1-based.
    Coset { domain: Vec<usize>, image: Vec<usize> },
    /// `{σ : σ(i) = i for i < t, σ(t) ∈ {t, …, t+m-1}}`.
    Chain { t: usize, m: usize },
    Union(Vec<FamilyKind>),
    /// The `k` lexicographically smallest permutations.
    Lex { k: usize },
    /// `x_i = 1{σ(i) ≤ 4}` for `i ≤ 4`; members are the σ with `x` monotone.
    Eq2,
    /// `{σ : |σ({1,2,3}) ∩ {1,2,3}| ∈ {0, 3}}`.
    Sec7,
    /// Uniform random set of the given size.
    Random { size: usize, seed: u64 },
    /// `base` with `remove` members dropped and `add` non-members inserted, both
    /// chosen uniformly with the seeded generator.
    Perturbed { base: Box<FamilyKind>, add: usize, remove: usize, seed: u64 },
}

impl FamilySpec {
    pub fn new(n: usize, kind: FamilyKind) -> Self {
        FamilySpec { n, kind }
    }

    /// The standard t-coset `T_{(1..t)(1..t)}`.
    pub fn standard_coset(n: usize, t: usize) -> Self {
        let points: Vec<usize> = (1..=t).collect();
        FamilySpec::new(
            n,
            FamilyKind::Coset {
                domain: points.clone(),
                image: points,
            },
        )
    }

    /// Parses `kind(args)`: `coset(I=1,2;J=3,4)`, `coset(t=2)`, `chain(t=1,m=2)`,
    /// `lex(k=10)`, `eq2`, `sec7`, `random(size=20,seed=1)`,
    /// `union(coset(I=1;J=1),coset(I=2;J=2))` and
    /// `perturb(base=coset(t=1),swap=12,seed=7)` (or `add=`/`remove=` in place of `swap=`).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Ok(FamilySpec::new(n, parse_kind(text.trim())?))
    }

    pub fn generate(&self) -> Result<PermutationSet> {
        generate_kind(self.n, &self.kind)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilyKind::Coset { domain, image } => write!(f, "coset(I={};J={})", list(domain), list(image)),
            FamilyKind::Chain { t, m } => write!(f, "chain(t={t},m={m})"),
            FamilyKind::Union(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "union({})", inner.join(","))
            }
            FamilyKind::Lex { k } => write!(f, "lex(k={k})"),
            FamilyKind::Eq2 => f.write_str("eq2"),
            FamilyKind::Sec7 => f.write_str("sec7"),
            FamilyKind::Random { size, seed } => write!(f, "random(size={size},seed={seed})"),
            FamilyKind::Perturbed { base, add, remove, seed } => {
                write!(f, "perturb(base={base},add={add},remove={remove},seed={seed})")
            }
        }
    }
}

/// Top-level pieces of an argument list, split on `,` and `;` outside parentheses.
fn split_top_level(args: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(format!("unbalanced parentheses in {args:?}")));
                }
            }
            ',' | ';' if depth == 0 => {
                out.push(args[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced parentheses in {args:?}")));
    }
    out.push(args[start..].trim());
    Ok(out.into_iter().filter(|s| !s.is_empty()).collect())
}

/// `key=value` pairs; a piece without `=` continues the previous value, so
/// `I=1,2;J=3,4` yields `I → "1,2"` and `J → "3,4"`.
fn key_values(args: &str) -> Result<Vec<(String, String)>> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for piece in split_top_level(args)? {
        let top_eq = piece.find('=').filter(|&i| !piece[..i].contains('('));
        match (top_eq, pairs.last_mut()) {
            (Some(i), _) => pairs.push((piece[..i].trim().to_string(), piece[i + 1..].trim().to_string())),
            (None, Some(last)) => {
                last.1.push(',');
                last.1.push_str(piece);
            }
            (None, None) => return Err(Error::parse(format!("expected key=value, found {piece:?}"))),
        }
    }
    Ok(pairs)
}

struct Args {
    kind: String,
    pairs: Vec<(String, String)>,
}

impl Args {
    fn take(&mut self, key: &str) -> Option<String> {
        let i = self.pairs.iter().position(|(k, _)| k == key)?;
        Some(self.pairs.remove(i).1)
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        self.take(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::parse(format!("{}: bad value {v:?} for {key}", self.kind)))
            })
            .transpose()
    }

    fn required<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.number(key)?
            .ok_or_else(|| Error::parse(format!("{} needs {key}=", self.kind)))
    }

    fn points(&mut self, key: &str) -> Result<Vec<usize>> {
        let v = self.take(key).ok_or_else(|| Error::parse(format!("{} needs {key}=", self.kind)))?;
        v.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad point {x:?} in {key}")))
            })
            .collect()
    }

    fn finish(self) -> Result<()> {
        match self.pairs.first() {
            Some((k, _)) => Err(Error::parse(format!("{}: unknown parameter {k:?}", self.kind))),
            None => Ok(()),
        }
    }
}

fn parse_kind(text: &str) -> Result<FamilyKind> {
    let (name, inner) = match text.find('(') {
        Some(i) => {
            let inner = text[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(format!("missing ')' in {text:?}")))?;
            (text[..i].trim(), inner)
        }
        None => (text, ""),
    };
    if name == "union" {
        let parts = split_top_level(inner)?
            .into_iter()
            .map(parse_kind)
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::parse("union needs at least one member family"));
        }
        return Ok(FamilyKind::Union(parts));
    }
    let mut args = Args {
        kind: name.to_string(),
        pairs: key_values(inner)?,
    };
    let kind = match name {
        "coset" => {
            if let Some(t) = args.number::<usize>("t")? {
                let points: Vec<usize> = (1..=t).collect();
                FamilyKind::Coset {
                    domain: points.clone(),
                    image: points,
                }
            } else {
                FamilyKind::Coset {
                    domain: args.points("I")?,
                    image: args.points("J")?,
                }
            }
        }
        "chain" => FamilyKind::Chain {
            t: args.required("t")?,
            m: args.required("m")?,
        },
        "lex" => FamilyKind::Lex { k: args.required("k")? },
        "eq2" => FamilyKind::Eq2,
        "sec7" => FamilyKind::Sec7,
        "random" => FamilyKind::Random {
            size: args.required("size")?,
            seed: args.number("seed")?.unwrap_or(0),
        },
        "perturb" => {
            let base = args
                .take("base")
                .ok_or_else(|| Error::parse("perturb needs base="))?;
            let base = Box::new(parse_kind(&base)?);
            let swap: Option<usize> = args.number("swap")?;
            let add: Option<usize> = args.number("add")?;
            let remove: Option<usize> = args.number("remove")?;
            let (add, remove) = match (swap, add, remove) {
                (Some(s), None, None) => (s, s),
                (None, a, r) => (a.unwrap_or(0), r.unwrap_or(0)),
                _ => return Err(Error::parse("perturb takes either swap= or add=/remove=")),
            };
            FamilyKind::Perturbed {
                base,
                add,
                remove,
                seed: args.number("seed")?.unwrap_or(0),
            }
        }
        other => return Err(Error::parse(format!("unknown family kind {other:?}"))),
    };
    args.finish()?;
    Ok(kind)
}

/// Members of the family described by `spec`.
pub fn generate_family(spec: &FamilySpec) -> Result<PermutationSet> {
    spec.generate()
}

fn generate_kind(n: usize, kind: &FamilyKind) -> Result<PermutationSet> {
    match kind {
        FamilyKind::Coset { domain, image } => {
            PermutationSet::from_permutations(n, &TCoset::new(n, domain, image)?.members())
        }
        FamilyKind::Chain { t, m } => chain(n, *t, *m),
        FamilyKind::Union(parts) => {
            let mut acc = PermutationSet::empty(n)?;
            for p in parts {
                acc = acc.union(&generate_kind(n, p)?)?;
            }
            Ok(acc)
        }
        FamilyKind::Lex { k } => lex_initial_segment(n, *k),
        FamilyKind::Eq2 => {
            if n < 8 {
                return Err(Error::domain(format!("the monotone-pattern family needs n ≥ 8 (n = {n})")));
            }
            filter(n, |images| {
                let x: Vec<bool> = images[..4].iter().map(|&v| v < 4).collect();
                x.windows(2).all(|w| w[0] >= w[1]) || x.windows(2).all(|w| w[0] <= w[1])
            })
        }
        FamilyKind::Sec7 => {
            if n < 6 {
                return Err(Error::domain(format!("the three-point family needs n ≥ 6 (n = {n})")));
            }
            filter(n, |images| {
                let inside = images[..3].iter().filter(|&&v| v < 3).count();
                inside == 0 || inside == 3
            })
        }
        FamilyKind::Random { size, seed } => random_set(n, *size, *seed),
        FamilyKind::Perturbed { base, add, remove, seed } => {
            perturb(&generate_kind(n, base)?, *add, *remove, *seed)
        }
    }
}

fn filter(n: usize, keep: impl Fn(&[u8]) -> bool) -> Result<PermutationSet> {
    let mut set = PermutationSet::empty(n)?;
    for_each_permutation(n, |r, images| {
        if keep(images) {
            set.insert_rank(r);
        }
    });
    Ok(set)
}

fn chain(n: usize, t: usize, m: usize) -> Result<PermutationSet> {
    if t == 0 || t > n || m == 0 || t + m - 1 > n {
        return Err(Error::domain(format!("chain needs 1 ≤ t ≤ n and 1 ≤ m ≤ n-t+1 (n = {n}, t = {t}, m = {m})")));
    }
    // 0-based: σ(i) = i for i < t-1 and t-1 ≤ σ(t-1) < t-1+m.
    let lead = t - 1;
    filter(n, |images| {
        images[..lead].iter().enumerate().all(|(i, &v)| v as usize == i)
            && (lead..lead + m).contains(&(images[lead] as usize))
    })
}

/// A uniformly random subset of `S_n` with exactly `size` members.
pub fn random_set(n: usize, size: usize, seed: u64) -> Result<PermutationSet> {
    let order = factorial(n) as usize;
    if size > order {
        return Err(Error::domain(format!("size {size} exceeds {n}! = {order}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PermutationSet::from_ranks(n, sample(&mut rng, order, size))
}

/// A random subset of `S_n` whose size is itself uniform on `0..=n!`.
pub fn random_set_any_size(n: usize, seed: u64) -> Result<PermutationSet> {
    let order = factorial(n) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(0..=order);
    PermutationSet::from_ranks(n, sample(&mut rng, order, size))
}

/// Drops `remove` random members of `base` and inserts `add` random non-members.
pub fn perturb(base: &PermutationSet, add: usize, remove: usize, seed: u64) -> Result<PermutationSet> {
    let members: Vec<usize> = base.ranks().collect();
    let outside: Vec<usize> = base.complement().ranks().collect();
    if remove > members.len() || add > outside.len() {
        return Err(Error::domain(format!(
            "cannot remove {remove} of {} members and add {add} of {} non-members",
            members.len(),
            outside.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = base.clone();
    for i in sample(&mut rng, members.len(), remove) {
        out.remove_rank(members[i]);
    }
    for i in sample(&mut rng, outside.len(), add) {
        out.insert_rank(outside[i]);
    }
    Ok(out)
}

/// `|∂T| = t(n - (t+1)/2)(n-t)!` for a t-coset.
pub fn t_coset_boundary(n: usize, t: usize) -> u128 {
    (t * (2 * n - t - 1) / 2) as u128 * factorial(n - t)
}

/// `|∂A| = (t(n - (t+1)/2) - m + 1) m (n-t)!` for the chain with parameters `t`, `m`.
pub fn chain_boundary(n: usize, t: usize, m: usize) -> u128 {
    ((t * (2 * n - t - 1) / 2 + 1 - m) * m) as u128 * factorial(n - t)
}
