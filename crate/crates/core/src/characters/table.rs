use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use crate::characters::ClassFunction;
use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::{enumerate_partitions, Partition};
use crate::combinatorics::tableaux::count_standard_tableaux;
use crate::error::{ensure_capacity, Error, Result};
use crate::scalar::Scalar;

/// Largest degree for which full character tables are built.
pub const MAX_TABLE_DEGREE: usize = 14;

const CACHE_MAGIC: &str = "sn-chartable v1";

/// `n! / Π_j (j^{m_j} m_j!)`, the number of permutations of the given cycle type.
pub fn class_size(cycle_type: &Partition) -> u128 {
    let mut denom: u128 = 1;
    for (len, &m) in cycle_type.multiplicities().iter().enumerate().skip(1) {
        denom *= (len as u128).pow(m as u32) * factorial(m);
    }
    factorial(cycle_type.n()) / denom
}

/// Exact integer character table of `S_n`.
///
/// Rows (irreducibles) and columns (cycle types) are both indexed by the
/// partitions of `n` in descending lexicographic order, so the identity class
/// `(1^n)` is the last column.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    class_sizes: Vec<u128>,
    values: Vec<i64>,
}

impl CharacterTable {
    /// Builds the table with the Murnaghan–Nakayama rule.
    pub fn compute(n: usize) -> Result<Self> {
        ensure_capacity("character table degree", MAX_TABLE_DEGREE as u128, n as u128)?;
        let partitions = enumerate_partitions(n)?;
        let class_sizes = partitions.iter().map(class_size).collect();
        let mut memo = HashMap::new();
        let mut values = Vec::with_capacity(partitions.len() * partitions.len());
        for alpha in &partitions {
            for c in &partitions {
                values.push(murnaghan_nakayama(alpha.parts(), c.parts(), &mut memo));
            }
        }
        Ok(CharacterTable {
            n,
            partitions,
            class_sizes,
            values,
        })
    }

    /// Process-wide shared table for degree `n`.
    pub fn cached(n: usize) -> Result<Arc<CharacterTable>> {
        if let Some(t) = table_cache().lock().expect("table cache poisoned").get(&n) {
            return Ok(t.clone());
        }
        Ok(Self::install(Self::compute(n)?))
    }

    /// Makes a table (e.g. one read from disk) the shared table for its degree,
    /// unless one is already present. Returns the shared table.
    pub fn install(table: CharacterTable) -> Arc<CharacterTable> {
        let mut guard = table_cache().lock().expect("table cache poisoned");
        guard.entry(table.n).or_insert_with(|| Arc::new(table)).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Partitions of `n` in descending lex order (row and column labels).
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.binary_search_by(|q| p.cmp(q)).ok()
    }

    fn require_index(&self, p: &Partition) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::domain(format!("{p} is not a partition of {}", self.n)))
    }

    /// `χ_α(c)` by row and column index.
    pub fn value(&self, alpha: usize, class: usize) -> i64 {
        self.values[alpha * self.partitions.len() + class]
    }

    pub fn row_values(&self, alpha: usize) -> &[i64] {
        let k = self.partitions.len();
        &self.values[alpha * k..(alpha + 1) * k]
    }

    pub fn character(&self, alpha: &Partition, cycle_type: &Partition) -> Result<i64> {
        Ok(self.value(self.require_index(alpha)?, self.require_index(cycle_type)?))
    }

    /// `dim[α] = χ_α(id)`.
    pub fn dim(&self, alpha: usize) -> u128 {
        self.value(alpha, self.partitions.len() - 1) as u128
    }

    /// The row of `α` as a class function over any scalar type.
    pub fn row<S: Scalar>(&self, alpha: &Partition) -> Result<ClassFunction<S>> {
        let i = self.require_index(alpha)?;
        ClassFunction::new(self.n, self.row_values(i).iter().map(|&v| S::from_i64(v)).collect())
    }

    /// Row orthogonality with the class-size weighted inner product, exact.
    pub fn rows_orthonormal(&self) -> bool {
        let k = self.partitions.len();
        let order = factorial(self.n) as i128;
        (0..k).all(|a| {
            (0..k).all(|b| {
                let s: i128 = (0..k)
                    .map(|c| self.class_sizes[c] as i128 * self.value(a, c) as i128 * self.value(b, c) as i128)
                    .sum();
                s == if a == b { order } else { 0 }
            })
        })
    }

    /// Column orthogonality `Σ_α χ_α(c)χ_α(c') = δ n!/|c|`, exact.
    pub fn columns_orthogonal(&self) -> bool {
        let k = self.partitions.len();
        let order = factorial(self.n);
        (0..k).all(|c| {
            (0..k).all(|d| {
                let s: i128 = (0..k).map(|a| self.value(a, c) as i128 * self.value(a, d) as i128).sum();
                s == if c == d { (order / self.class_sizes[c]) as i128 } else { 0 }
            })
        })
    }

    pub fn sum_dim_squared(&self) -> u128 {
        (0..self.partitions.len()).map(|a| self.dim(a).pow(2)).sum()
    }

    /// Serializes to the versioned cache format.
    pub fn to_cache_text(&self) -> String {
        let mut out = format!("{CACHE_MAGIC} n={}\n", self.n);
        for (i, p) in self.partitions.iter().enumerate() {
            let row: Vec<String> = self.row_values(i).iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}\t{}", p.to_csv_form(), row.join(" ")).expect("write to string");
        }
        writeln!(out, "{}", self.sum_dim_squared()).expect("write to string");
        out
    }

    /// Parses and validates a cache file: header, row labels, row lengths,
    /// dimensions against the hook-length formula, row orthogonality, and the
    /// `Σ dim² = n!` line.
    pub fn from_cache_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse("empty character-table file"))?;
        let n: usize = header
            .strip_prefix(CACHE_MAGIC)
            .and_then(|rest| rest.trim().strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::parse(format!("bad character-table header {header:?}")))?;
        ensure_capacity("character table degree", MAX_TABLE_DEGREE as u128, n as u128)?;
        let partitions = enumerate_partitions(n)?;
        let k = partitions.len();
        let mut values = Vec::with_capacity(k * k);
        for p in &partitions {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(format!("character table truncated before row {p}")))?;
            let (label, row) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(format!("row {line:?} lacks a tab separator")))?;
            if label != p.to_csv_form() {
                return Err(Error::parse(format!("expected row {}, found {label:?}", p.to_csv_form())));
            }
            let row = row
                .split_whitespace()
                .map(|v| v.parse::<i64>().map_err(|_| Error::parse(format!("bad character value {v:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != k {
                return Err(Error::parse(format!("row {label} has {} values, expected {k}", row.len())));
            }
            values.extend(row);
        }
        let integrity: u128 = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| Error::parse("missing integrity line"))?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::parse("trailing content after integrity line"));
        }
        let table = CharacterTable {
            n,
            class_sizes: partitions.iter().map(class_size).collect(),
            partitions,
            values,
        };
        if integrity != factorial(n) || table.sum_dim_squared() != integrity {
            return Err(Error::parse(format!("integrity line {integrity} does not match {n}! or the table")));
        }
        for (i, p) in table.partitions.iter().enumerate() {
            if table.dim(i) != count_standard_tableaux(p)? {
                return Err(Error::parse(format!("dimension of {p} is inconsistent")));
            }
        }
        if !table.rows_orthonormal() {
            return Err(Error::parse("character rows are not orthonormal"));
        }
        Ok(table)
    }

    /// Loads `dir/chartable-n<n>.txt` when present and valid, otherwise
    /// computes the table and writes it there.
    pub fn load_or_compute(dir: &Path, n: usize) -> Result<CharacterTable> {
        let path = dir.join(format!("chartable-n{n}.txt"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(table) = Self::from_cache_text(&text) {
                if table.n == n {
                    return Ok(table);
                }
            }
        }
        let table = Self::compute(n)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, table.to_cache_text())?;
        Ok(table)
    }
}

type MnMemo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// `χ_shape(cycles)` by removing border strips of length `cycles[0]`, then
/// recursing on the rest of the cycle multiset.
fn murnaghan_nakayama(shape: &[usize], cycles: &[usize], memo: &mut MnMemo) -> i64 {
    if cycles.is_empty() {
        return i64::from(shape.is_empty());
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = cycles[0];
    let l = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (l - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * murnaghan_nakayama(&parts, &cycles[1..], memo);
    }
    memo.insert(key, total);
    total
}

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Character table of `S_n` (convenience over [`CharacterTable::cached`]).
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    CharacterTable::cached(n)
}
