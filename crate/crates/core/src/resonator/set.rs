use super::layers::PrimeLayers;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{self, BufRead, Write};

/// A member of the resonator set together with the data needed to build
/// `chi(m)` multiplicatively from earlier members.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Member {
    pub m: u64,
    pub f: f64,
    /// Index of `m / p` in the member list, where `p` is the largest prime
    /// factor of `m`; `u32::MAX` for `m = 1`.
    pub parent: u32,
    /// Index of `p` in the prime list; `u32::MAX` for `m = 1`.
    pub prime: u32,
}

/// The divisor-closed set `M`, sorted by `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonatorSet {
    /// The prime set the members are built from.
    pub primes: Vec<u64>,
    pub members: Vec<Member>,
    /// `sum_m f(m)^2`.
    pub mass: f64,
}

impl ResonatorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.index_of(m).is_some()
    }

    pub fn index_of(&self, m: u64) -> Option<usize> {
        self.members.binary_search_by_key(&m, |x| x.m).ok()
    }

    pub fn weight(&self, m: u64) -> f64 {
        self.index_of(m).map_or(0.0, |i| self.members[i].f)
    }

    pub fn max_member(&self) -> u64 {
        self.members.last().map_or(1, |x| x.m)
    }

    /// Writes the table as CSV with header `m,f`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "m,f")?;
        for x in &self.members {
            writeln!(out, "{},{:.16e}", x.m, x.f)?;
        }
        Ok(())
    }

    /// Reads `(m, f)` pairs written by [`write_csv`](Self::write_csv).
    pub fn read_csv_pairs<R: BufRead>(input: R) -> Result<Vec<(u64, f64)>> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .transpose()
            .map_err(|e| Error::domain(e.to_string()))?;
        if header.as_deref().map(str::trim) != Some("m,f") {
            return Err(Error::domain(
                "resonator table must start with header 'm,f'",
            ));
        }
        let mut out = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::domain(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let (m, f) = line
                .split_once(',')
                .ok_or_else(|| Error::domain(format!("bad row '{line}'")))?;
            let m = m
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad m in '{line}'")))?;
            let f = f
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad f in '{line}'")))?;
            out.push((m, f));
        }
        Ok(out)
    }

    /// The set `{1}`.
    pub fn trivial() -> Self {
        Self::with_mass(
            Vec::new(),
            vec![Member {
                m: 1,
                f: 1.0,
                parent: u32::MAX,
                prime: u32::MAX,
            }],
        )
    }

    /// `chi_d(m)` for every member, in member order, given `chi_d` on the
    /// prime set.
    pub fn characters(&self, chi_p: &[i8], out: &mut Vec<i8>) {
        out.clear();
        out.reserve(self.members.len());
        for x in &self.members {
            let c = if x.prime == u32::MAX {
                1
            } else {
                out[x.parent as usize] * chi_p[x.prime as usize]
            };
            out.push(c);
        }
    }

    /// Computes `sum_m f(m)^2` with compensated summation.
    fn with_mass(primes: Vec<u64>, members: Vec<Member>) -> Self {
        let mass = crate::summation::sum(members.iter().map(|x| x.f * x.f));
        Self {
            primes,
            members,
            mass,
        }
    }
}

struct Walk<'a> {
    layers: &'a PrimeLayers,
    counts: Vec<usize>,
    limit: Vec<usize>,
    out: Vec<(u64, f64, u64, u32)>,
    cap: usize,
}

impl Walk<'_> {
    fn visit(&mut self, start: usize, m: u64, f: f64) -> Result<()> {
        for i in start..self.layers.primes.len() {
            let k = self.layers.layer_of[i];
            if self.counts[k] + 1 > self.limit[k] {
                continue;
            }
            let p = self.layers.primes[i];
            let next = m.checked_mul(p).ok_or_else(|| {
                Error::resource(format!(
                    "resonator member overflows u64 after {} members",
                    self.out.len()
                ))
            })?;
            if self.out.len() >= self.cap {
                return Err(Error::resource(format!(
                    "resonator set exceeds m_cap = {} members (largest so far {})",
                    self.cap, m
                )));
            }
            let g = f * self.layers.weights[i];
            self.out.push((next, g, m, i as u32));
            self.counts[k] += 1;
            self.visit(i + 1, next, g)?;
            self.counts[k] -= 1;
        }
        Ok(())
    }
}

/// Largest allowed per-layer count: strictly below `Delta_k`.
pub(crate) fn allowed(delta: f64) -> usize {
    if delta <= 0.0 {
        return 0;
    }
    let c = delta.ceil();
    (c as usize).saturating_sub(1)
}

/// Enumerates the squarefree products of the prime set with fewer than
/// `Delta_k` prime factors in every layer.
pub fn build_m(layers: &PrimeLayers, m_cap: usize) -> Result<ResonatorSet> {
    let limit: Vec<usize> = layers.layers.iter().map(|l| allowed(l.delta)).collect();
    let mut walk = Walk {
        layers,
        counts: vec![0; layers.layers.len()],
        limit,
        out: vec![(1, 1.0, 0, u32::MAX)],
        cap: m_cap,
    };
    walk.visit(0, 1, 1.0)?;
    let mut raw = walk.out;
    raw.sort_unstable_by_key(|r| r.0);
    let members = raw
        .iter()
        .map(|&(m, f, parent, prime)| Member {
            m,
            f,
            parent: if prime == u32::MAX {
                u32::MAX
            } else {
                raw.binary_search_by_key(&parent, |r| r.0)
                    .expect("divisor closed") as u32
            },
            prime,
        })
        .collect();
    Ok(ResonatorSet::with_mass(layers.primes.clone(), members))
}
