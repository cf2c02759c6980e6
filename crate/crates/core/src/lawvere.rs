//! Finitary equational theories, finite models, and co-operations on free
//! algebras.
//!
//! Free algebras are represented by terms; equalities between them are
//! checked semantically by evaluation in finite models.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::ParseError;
use crate::finring::FiniteRing;
use crate::report::Report;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawvereError {
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("`{symbol}` takes {expected} arguments, got {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("{count} generators exceed the cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("term depth {depth} exceeds the cap of {cap}")]
    DepthTooLarge { depth: usize, cap: usize },
    #[error("the algebra is not a model: {0}")]
    NotAModel(Box<Counterexample>),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Size limits for exhaustive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub carrier: usize,
    pub generators: usize,
    pub depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: 8,
            generators: 3,
            depth: 3,
        }
    }
}

/// A term over variables of type `V`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term<V = String> {
    Var(V),
    App(String, Vec<Term<V>>),
}

impl<V> Term<V> {
    pub fn var(v: V) -> Self {
        Term::Var(v)
    }

    pub fn app(symbol: &str, args: Vec<Term<V>>) -> Self {
        Term::App(symbol.to_string(), args)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    /// Replaces every variable by a term (the homomorphic extension of a
    /// map on generators).
    pub fn bind<W: Clone>(&self, f: &impl Fn(&V) -> Term<W>) -> Term<W> {
        match self {
            Term::Var(v) => f(v),
            Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| a.bind(f)).collect()),
        }
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<&V>
    where
        V: PartialEq,
    {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a V>)
    where
        V: PartialEq,
    {
        match self {
            Term::Var(v) => {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

impl<V: fmt::Display> fmt::Display for Term<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) if args.is_empty() => f.write_str(s),
            Term::App(s, args) => {
                write!(f, "({s}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A generator `s` of the free algebra tagged with a coproduct summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedGenerator {
    pub base: String,
    pub tag: usize,
}

impl fmt::Display for TaggedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<{}>", self.base, self.tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub symbol: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// A presentation by operations and identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    ops: Vec<Operation>,
    identities: Vec<Identity>,
}

impl Theory {
    pub fn new(name: &str, ops: Vec<Operation>, identities: Vec<Identity>) -> Result<Self, LawvereError> {
        let t = Theory {
            name: name.to_string(),
            ops,
            identities,
        };
        for id in &t.identities {
            t.check_term(&id.lhs)?;
            t.check_term(&id.rhs)?;
        }
        Ok(t)
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.ops.iter().find(|o| o.symbol == symbol).map(|o| o.arity)
    }

    pub fn check_term<V>(&self, t: &Term<V>) -> Result<(), LawvereError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(s, args) => {
                let expected = self
                    .arity(s)
                    .ok_or_else(|| LawvereError::UnknownOperation(s.clone()))?;
                if expected != args.len() {
                    return Err(LawvereError::ArityMismatch {
                        symbol: s.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Parses `theory`, `op <symbol> <arity>` and `id [name:] <term> = <term>`
    /// lines; terms are S-expressions and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LawvereError> {
        let mut name = String::from("unnamed");
        let mut ops = Vec::new();
        let mut raw_ids = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let lead = start + body.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_at = lead + keyword.len() + (trimmed.len() - keyword.len() - rest.len());
            let rest_trim = rest.trim_start();
            let rest_at = rest_at + rest.len() - rest_trim.len();
            match keyword {
                "theory" => name = rest_trim.to_string(),
                "op" => {
                    let mut parts = rest_trim.split_whitespace();
                    let (Some(sym), Some(ar), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(ParseError::new(rest_at, "expected `op <symbol> <arity>`").into());
                    };
                    let arity = ar
                        .parse()
                        .map_err(|_| ParseError::new(rest_at + rest_trim.find(ar).unwrap_or(0), "invalid arity"))?;
                    ops.push(Operation {
                        symbol: sym.to_string(),
                        arity,
                    });
                }
                "id" => raw_ids.push((rest_trim.to_string(), rest_at)),
                _ => return Err(ParseError::new(lead, format!("unknown directive `{keyword}`")).into()),
            }
        }
        let nullary: Vec<String> = ops.iter().filter(|o| o.arity == 0).map(|o| o.symbol.clone()).collect();
        let mut identities = Vec::new();
        for (k, (text, at)) in raw_ids.into_iter().enumerate() {
            let (id_name, body, body_at) = match text.split_once(':') {
                Some((n, b)) if !n.contains('(') => {
                    (n.trim().to_string(), b, at + n.len() + 1)
                }
                _ => (format!("identity {}", k + 1), text.as_str(), at),
            };
            let Some(eq) = body.find('=') else {
                return Err(ParseError::new(body_at, "expected `<term> = <term>`").into());
            };
            let lhs = parse_term(&body[..eq], &nullary).map_err(|e| e.shifted(body_at))?;
            let rhs = parse_term(&body[eq + 1..], &nullary).map_err(|e| e.shifted(body_at + eq + 1))?;
            identities.push(Identity { name: id_name, lhs, rhs });
        }
        Theory::new(&name, ops, identities)
    }

    pub fn monoid() -> Self {
        Theory::parse(MONOID).expect("built-in theory")
    }

    pub fn ab_group() -> Self {
        Theory::parse(AB_GROUP).expect("built-in theory")
    }

    pub fn comm_ring() -> Self {
        Theory::parse(COMM_RING).expect("built-in theory")
    }

    pub fn builtins() -> Vec<Theory> {
        vec![Theory::monoid(), Theory::ab_group(), Theory::comm_ring()]
    }
}

const MONOID: &str = "\
theory Monoid
op * 2
op e 0
id associativity: (* (* a b) c) = (* a (* b c))
id left unit: (* e a) = a
id right unit: (* a e) = a
";

const AB_GROUP: &str = "\
theory AbGroup
op + 2
op 0 0
op neg 1
id associativity: (+ (+ a b) c) = (+ a (+ b c))
id commutativity: (+ a b) = (+ b a)
id unit: (+ a 0) = a
id inverse: (+ a (neg a)) = 0
";

const COMM_RING: &str = "\
theory CommRing
op + 2
op * 2
op neg 1
op 0 0
op 1 0
id additive associativity: (+ (+ a b) c) = (+ a (+ b c))
id additive commutativity: (+ a b) = (+ b a)
id additive unit: (+ a 0) = a
id additive inverse: (+ a (neg a)) = 0
id multiplicative associativity: (* (* a b) c) = (* a (* b c))
id commutativity: (* a b) = (* b a)
id multiplicative unit: (* a 1) = a
id distributivity: (* a (+ b c)) = (+ (* a b) (* a c))
";

/// Parses an S-expression term; atoms naming a nullary operation are
/// constants, other atoms are variables.
pub fn parse_term(text: &str, nullary: &[String]) -> Result<Term, ParseError> {
    struct P<'a> {
        s: &'a str,
        pos: usize,
        nullary: &'a [String],
    }
    impl P<'_> {
        fn ws(&mut self) {
            let rest = &self.s[self.pos..];
            self.pos += rest.len() - rest.trim_start().len();
        }
        fn atom(&mut self) -> &str {
            let rest = &self.s[self.pos..];
            let n = rest
                .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                .unwrap_or(rest.len());
            self.pos += n;
            &rest[..n]
        }
        fn term(&mut self) -> Result<Term, ParseError> {
            self.ws();
            let at = self.pos;
            match self.s[self.pos..].chars().next() {
                None => Err(ParseError::new(at, "expected a term")),
                Some(')') => Err(ParseError::new(at, "unexpected `)`")),
                Some('(') => {
                    self.pos += 1;
                    self.ws();
                    let head = self.atom().to_string();
                    if head.is_empty() {
                        return Err(ParseError::new(self.pos, "expected an operation symbol"));
                    }
                    let mut args = Vec::new();
                    loop {
                        self.ws();
                        match self.s[self.pos..].chars().next() {
                            Some(')') => {
                                self.pos += 1;
                                return Ok(Term::App(head, args));
                            }
                            None => return Err(ParseError::new(self.pos, "expected `)`")),
                            _ => args.push(self.term()?),
                        }
                    }
                }
                Some(_) => {
                    let a = self.atom().to_string();
                    if self.nullary.contains(&a) {
                        Ok(Term::App(a, Vec::new()))
                    } else {
                        Ok(Term::Var(a))
                    }
                }
            }
        }
    }
    let mut p = P { s: text, pos: 0, nullary };
    let t = p.term()?;
    p.ws();
    if p.pos != text.len() {
        return Err(ParseError::new(p.pos, "unexpected trailing input"));
    }
    Ok(t)
}

/// A finite algebra for a theory: a carrier `0..size` and one table per
/// operation, indexed by the arguments in mixed radix (first argument most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    theory: Theory,
    labels: Vec<String>,
    tables: BTreeMap<String, Vec<usize>>,
}

/// A failing identity together with the assignment that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub identity: String,
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let env: Vec<String> = self.assignment.iter().map(|(v, a)| format!("{v}={a}")).collect();
        write!(
            f,
            "{} fails at {{{}}}: {} != {}",
            self.identity,
            env.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

impl FiniteAlgebra {
    pub fn from_fn(theory: &Theory, labels: Vec<String>, f: impl Fn(&str, &[usize]) -> usize) -> Self {
        let n = labels.len();
        let mut tables = BTreeMap::new();
        for op in &theory.ops {
            let count = n.pow(op.arity as u32);
            let mut args = vec![0usize; op.arity];
            let mut table = Vec::with_capacity(count);
            for mut code in 0..count {
                for slot in args.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                table.push(f(&op.symbol, &args));
            }
            tables.insert(op.symbol.clone(), table);
        }
        FiniteAlgebra {
            theory: theory.clone(),
            labels,
            tables,
        }
    }

    /// Interprets `+ * neg 0 1 e` by the ring operations (`e` is the unit).
    pub fn from_ring(theory: &Theory, ring: &FiniteRing) -> Result<Self, LawvereError> {
        for op in &theory.ops {
            if !matches!(op.symbol.as_str(), "+" | "*" | "neg" | "0" | "1" | "e") {
                return Err(LawvereError::UnknownOperation(op.symbol.clone()));
            }
        }
        let elems: Vec<_> = (0..ring.size()).map(|i| ring.element(i).unwrap()).collect();
        let labels = elems.iter().map(|e| ring.label(e)).collect();
        Ok(Self::from_fn(theory, labels, |sym, args| {
            let a = |i: usize| &elems[args[i]];
            let r = match sym {
                "+" => ring.add(a(0), a(1)),
                "*" => ring.mul(a(0), a(1)),
                "neg" => ring.neg(a(0)),
                "0" => ring.zero(),
                _ => ring.one(),
            };
            r.index()
        }))
    }

    /// Replaces the table of one operation.
    pub fn with_table(mut self, symbol: &str, table: Vec<usize>) -> Result<Self, LawvereError> {
        let arity = self
            .theory
            .arity(symbol)
            .ok_or_else(|| LawvereError::UnknownOperation(symbol.to_string()))?;
        assert_eq!(table.len(), self.size().pow(arity as u32), "table size");
        self.tables.insert(symbol.to_string(), table);
        Ok(self)
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn apply(&self, symbol: &str, args: &[usize]) -> Result<usize, LawvereError> {
        let table = self
            .tables
            .get(symbol)
            .ok_or_else(|| LawvereError::UnknownOperation(symbol.to_string()))?;
        let expected = self.theory.arity(symbol).unwrap_or(0);
        if expected != args.len() {
            return Err(LawvereError::ArityMismatch {
                symbol: symbol.to_string(),
                expected,
                found: args.len(),
            });
        }
        let code = args.iter().fold(0, |acc, &a| acc * self.size() + a);
        Ok(table[code])
    }

    pub fn eval<V: fmt::Display>(&self, t: &Term<V>, env: &impl Fn(&V) -> Option<usize>) -> Result<usize, LawvereError> {
        match t {
            Term::Var(v) => env(v).ok_or_else(|| LawvereError::UnboundVariable(v.to_string())),
            Term::App(s, args) => {
                let vals = args.iter().map(|a| self.eval(a, env)).collect::<Result<Vec<_>, _>>()?;
                self.apply(s, &vals)
            }
        }
    }

    /// Evaluates with a map from variable names.
    pub fn eval_term(&self, t: &Term, env: &BTreeMap<String, usize>) -> Result<usize, LawvereError> {
        self.eval(t, &|v: &String| env.get(v).copied())
    }

    /// Checks every identity under every assignment; returns the first
    /// counterexample in identity order, then assignment order.
    pub fn is_model(&self, cap: usize) -> Result<Option<Counterexample>, LawvereError> {
        if self.size() > cap {
            return Err(LawvereError::CarrierTooLarge { size: self.size(), cap });
        }
        for id in &self.theory.identities {
            let mut vars: Vec<&String> = id.lhs.variables();
            for v in id.rhs.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            let mut found = None;
            for_each_tuple(self.size(), vars.len(), |vals| {
                let env = |v: &String| vars.iter().position(|w| *w == v).map(|i| vals[i]);
                let l = self.eval(&id.lhs, &env).expect("checked identity");
                let r = self.eval(&id.rhs, &env).expect("checked identity");
                if l != r {
                    found = Some(Counterexample {
                        identity: id.name.clone(),
                        assignment: vars
                            .iter()
                            .zip(vals)
                            .map(|(v, &a)| (v.to_string(), self.labels[a].clone()))
                            .collect(),
                        lhs: self.labels[l].clone(),
                        rhs: self.labels[r].clone(),
                    });
                    return false;
                }
                true
            });
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Calls `f` on every tuple in `0..n` of length `len`, last position
/// fastest, stopping early when `f` returns false.
pub fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut t = vec![0usize; len];
    if len > 0 && n == 0 {
        return;
    }
    loop {
        if !f(&t) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_tuple(n, len, |t| {
        out.push(t.to_vec());
        true
    });
    out
}

/// `s ↦ op(s⟨1⟩, …, s⟨n⟩)` for each generator.
pub fn co_operation_on_free(
    theory: &Theory,
    op: &str,
    generators: &[String],
) -> Result<Vec<(String, Term<TaggedGenerator>)>, LawvereError> {
    let n = theory
        .arity(op)
        .ok_or_else(|| LawvereError::UnknownOperation(op.to_string()))?;
    Ok(generators
        .iter()
        .map(|s| {
            let args = (1..=n)
                .map(|tag| Term::Var(TaggedGenerator { base: s.clone(), tag }))
                .collect();
            (s.clone(), Term::App(op.to_string(), args))
        })
        .collect())
}

/// Extends a co-operation from generators to an arbitrary term.
pub fn apply_co_operation(coop: &[(String, Term<TaggedGenerator>)], t: &Term) -> Term<TaggedGenerator> {
    t.bind(&|v: &String| {
        coop.iter()
            .find(|(s, _)| s == v)
            .map(|(_, img)| img.clone())
            .expect("term over the generators")
    })
}

/// All terms over `vars` of depth at most `depth`; leaves are depth 0.
pub fn terms_up_to_depth(theory: &Theory, vars: &[String], depth: usize) -> Vec<Term> {
    let leaves: Vec<Term> = vars
        .iter()
        .map(|v| Term::Var(v.clone()))
        .chain(
            theory
                .ops
                .iter()
                .filter(|o| o.arity == 0)
                .map(|o| Term::App(o.symbol.clone(), Vec::new())),
        )
        .collect();
    let mut level = leaves.clone();
    for _ in 0..depth {
        let mut next = leaves.clone();
        for op in theory.ops.iter().filter(|o| o.arity > 0) {
            for args in all_tuples(level.len(), op.arity) {
                next.push(Term::App(op.symbol.clone(), args.iter().map(|&i| level[i].clone()).collect()));
            }
        }
        level = next;
    }
    level
}

/// Number of terms [`terms_up_to_depth`] would produce.
pub fn term_count(theory: &Theory, generators: usize, depth: usize) -> u128 {
    let leaves = (generators + theory.ops.iter().filter(|o| o.arity == 0).count()) as u128;
    let mut n = leaves;
    for _ in 0..depth {
        n = theory
            .ops
            .iter()
            .filter(|o| o.arity > 0)
            .fold(leaves, |acc, o| acc.saturating_add(n.saturating_pow(o.arity as u32)));
    }
    n
}

const TERM_LIMIT: u128 = 1 << 20;

fn check_caps(alg: &FiniteAlgebra, generators: &[String], depth: Option<usize>, caps: Caps) -> Result<(), LawvereError> {
    if alg.size() > caps.carrier {
        return Err(LawvereError::CarrierTooLarge {
            size: alg.size(),
            cap: caps.carrier,
        });
    }
    if generators.len() > caps.generators {
        return Err(LawvereError::TooManyGenerators {
            count: generators.len(),
            cap: caps.generators,
        });
    }
    if let Some(d) = depth {
        if d > caps.depth || term_count(&alg.theory, generators.len(), d) > TERM_LIMIT {
            return Err(LawvereError::DepthTooLarge { depth: d, cap: caps.depth });
        }
    }
    if let Some(ce) = alg.is_model(caps.carrier)? {
        return Err(LawvereError::NotAModel(Box::new(ce)));
    }
    Ok(())
}

fn show_maps(alg: &FiniteAlgebra, generators: &[String], maps: &[&[usize]]) -> String {
    let parts: Vec<String> = maps
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let vals: Vec<String> = generators
                .iter()
                .zip(f.iter())
                .map(|(s, &a)| format!("{s}={}", alg.label(a)))
                .collect();
            format!("f{}{{{}}}", i + 1, vals.join(","))
        })
        .collect();
    parts.join(" ")
}

/// Checks that `ǒp` makes the co-operation square commute.
///
/// For every tuple `(f₁, …, fₙ)` of maps `S → |A|` and every term `t` of
/// depth at most `depth`, evaluating `ǒp(t)` with `s⟨i⟩ ↦ fᵢ(s)` must equal
/// evaluating `t` under the pointwise map `s ↦ op_A(f₁(s), …, fₙ(s))`.
pub fn verify_coop_property(
    theory: &Theory,
    op: &str,
    generators: &[String],
    alg: &FiniteAlgebra,
    depth: usize,
    caps: Caps,
) -> Result<Report, LawvereError> {
    check_caps(alg, generators, Some(depth), caps)?;
    let coop = co_operation_on_free(theory, op, generators)?;
    let n = theory.arity(op).expect("checked above");
    let terms = terms_up_to_depth(theory, generators, depth);
    let images: Vec<_> = terms.iter().map(|t| apply_co_operation(&coop, t)).collect();
    let maps = all_tuples(alg.size(), generators.len());
    let law = format!("{}:{op}", theory.name);
    let mut report = Report::new(format!("co-operation {op} of {}", theory.name));
    for choice in all_tuples(maps.len(), n) {
        let fs: Vec<&[usize]> = choice.iter().map(|&i| maps[i].as_slice()).collect();
        let pointwise: Vec<usize> = (0..generators.len())
            .map(|k| {
                let args: Vec<usize> = fs.iter().map(|f| f[k]).collect();
                alg.apply(op, &args)
            })
            .collect::<Result<_, _>>()?;
        let tagged_env = |g: &TaggedGenerator| {
            generators
                .iter()
                .position(|s| *s == g.base)
                .map(|k| fs[g.tag - 1][k])
        };
        let plain_env = |v: &String| generators.iter().position(|s| s == v).map(|k| pointwise[k]);
        for (t, image) in terms.iter().zip(&images) {
            let got = alg.eval(image, &tagged_env)?;
            let expected = alg.eval(t, &plain_env)?;
            report.check(&law, got == expected, || {
                (
                    format!("t={t} {}", show_maps(alg, generators, &fs)),
                    alg.label(expected).to_string(),
                    alg.label(got).to_string(),
                )
            });
        }
    }
    Ok(report)
}

/// Compares the pointwise structure on maps `S → |A|` with the structure
/// induced through the co-operations, for every operation.
pub fn hom_structures_agree(
    theory: &Theory,
    generators: &[String],
    alg: &FiniteAlgebra,
    caps: Caps,
) -> Result<Report, LawvereError> {
    check_caps(alg, generators, None, caps)?;
    let maps = all_tuples(alg.size(), generators.len());
    let mut report = Report::new(format!("hom structures of {}", theory.name));
    for op in theory.operations() {
        let coop = co_operation_on_free(theory, &op.symbol, generators)?;
        let law = format!("{}:{}", theory.name, op.symbol);
        for choice in all_tuples(maps.len(), op.arity) {
            let fs: Vec<&[usize]> = choice.iter().map(|&i| maps[i].as_slice()).collect();
            let env = |g: &TaggedGenerator| {
                generators
                    .iter()
                    .position(|s| *s == g.base)
                    .map(|k| fs[g.tag - 1][k])
            };
            let mut pointwise = Vec::with_capacity(generators.len());
            let mut induced = Vec::with_capacity(generators.len());
            for (k, (_, image)) in coop.iter().enumerate() {
                let args: Vec<usize> = fs.iter().map(|f| f[k]).collect();
                pointwise.push(alg.apply(&op.symbol, &args)?);
                induced.push(alg.eval(image, &env)?);
            }
            report.check(&law, pointwise == induced, || {
                (
                    show_maps(alg, generators, &fs),
                    format!("{pointwise:?}"),
                    format!("{induced:?}"),
                )
            });
        }
    }
    Ok(report)
}
