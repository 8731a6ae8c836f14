//! `csk`: exact moment, cumulant and variance-function computations.
//!
//! Every subcommand prints one JSON document (or an aligned table with
//! `--format text`). Exit status is 0 on success, 1 when the computation
//! itself fails, and 2 on malformed input.

mod input;
mod text;
mod wire;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csk_core::families::{self, RecursionSpec};
use csk_core::membership::{self, Claim, Target};
use csk_core::transforms::{self, FreeCumulants, MomentSequence, STransform};
use csk_core::varfun::{self, Operand, VarfunOp, VarianceClass, VarianceFunction};
use csk_core::{demo, hankel, jacobi, noncrossing, Error, Rational, Series};
use serde_json::{json, Value};

use input::{FactorList, RatList};

#[derive(Parser, Debug)]
#[command(
    name = "csk",
    version,
    about = "Exact computations for Cauchy-Stieltjes kernel families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Truncation order.
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct Input {
    /// Comma-separated rationals, e.g. `1,0,1/2`.
    #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
    values: Option<RatList>,
    /// JSON file holding the list (`-` for stdin).
    #[arg(long, conflicts_with = "values")]
    input: Option<String>,
}

impl Input {
    fn list(&self) -> Result<Vec<Rational>, CliError> {
        match (&self.values, &self.input) {
            (Some(v), _) => Ok(v.0.clone()),
            (None, Some(src)) => {
                let payload = input::read_payload(src).map_err(CliError::Input)?;
                input::list_from_json(&payload).map_err(CliError::Input)
            }
            (None, None) => Err(CliError::Input(
                "one of --values or --input is required".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConvertOp {
    /// Moments `m_0..` to free cumulants `kappa_1..`.
    ToCumulants,
    /// Free cumulants to moments.
    ToMoments,
    /// Free cumulants to moments by summing over non-crossing partitions.
    Noncrossing,
    /// Moments to the S-transform.
    ToS,
    /// S-transform coefficients to moments.
    FromS,
    /// Moments of the dilation by `--t`.
    Dilate,
    /// Free cumulants of the dilation by `--t`.
    DilateCumulants,
    /// Free cumulants of the translation by `--t`.
    Translate,
    /// Free additive convolution of two cumulant lists.
    Add,
    /// Free convolution power `--t` of a cumulant list.
    Power,
    /// Free multiplicative convolution of two S-transforms.
    Mul,
    /// Moments for `S(z) = (1 + b z)^{-p}`.
    FussCatalan,
    /// S-transform of the Marchenko-Pastur law with rate `--lambda`.
    MarchenkoPastur,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    op: ConvertOp,
    #[command(flatten)]
    input: Input,
    /// Second operand for `add` and `mul`.
    #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
    other: Option<RatList>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    t: Option<Rational>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    p: Option<Rational>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VarfunCmd {
    /// Centered unit-variance moments to the variance function.
    FromMoments,
    /// Centered moments of any positive variance.
    FromCenteredMoments,
    /// Variance function to moments `m_0..m_order`.
    ToMoments,
    /// One of the closure operations, see `--transform`.
    Apply,
    /// `a m + b m^2 + (1 + c m) prod (1 + b_j m)^{p_j}`.
    ProductForm,
    /// `(1 + z) / S(z)`.
    FromS,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Transform {
    ScaleMean,
    AddLinear,
    SumMinusOne,
    ScalarCombine,
    SubSquare,
    AddSquare,
    Reflect,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    V,
    Vinf,
}

impl From<ClassArg> for VarianceClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::V => VarianceClass::V,
            ClassArg::Vinf => VarianceClass::VInfinity,
        }
    }
}

impl From<ClassArg> for Target {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::V => Target::V,
            ClassArg::Vinf => Target::VInfinity,
        }
    }
}

#[derive(Args, Debug)]
struct VarfunInput {
    #[command(flatten)]
    input: Input,
    /// Treat the coefficients as a truncated series rather than a polynomial.
    #[arg(long)]
    truncated: bool,
}

impl VarfunInput {
    fn varfun(&self) -> Result<VarianceFunction, CliError> {
        to_varfun(self.input.list()?, self.truncated)
    }
}

fn to_varfun(coeffs: Vec<Rational>, truncated: bool) -> Result<VarianceFunction, CliError> {
    Ok(if truncated {
        VarianceFunction::from_series(Series::new(coeffs)?)?
    } else {
        VarianceFunction::polynomial(&coeffs)?
    })
}

#[derive(Args, Debug)]
struct VarfunArgs {
    #[arg(long, value_enum)]
    op: VarfunCmd,
    #[command(flatten)]
    v: VarfunInput,
    #[arg(long, value_enum)]
    transform: Option<Transform>,
    /// Parameter of `scale-mean`, `add-linear` and `scalar-combine`.
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    param: Option<Rational>,
    #[arg(long, value_enum, default_value = "v")]
    class: ClassArg,
    /// Second variance function for `sum-minus-one`.
    #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
    other: Option<RatList>,
    #[arg(long, value_enum, default_value = "v")]
    other_class: ClassArg,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
    c: Option<Rational>,
    /// Product factors as `b:p` pairs, e.g. `1:1/2,2:3/2`.
    #[arg(long, value_parser = input::parse_factors)]
    factors: Option<FactorList>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RecursionKind {
    /// `--values a_0,a_1,...`
    General,
    /// `--values b_1,...,b_{d+1}`
    Finite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moment, cumulant and S-transform conversions.
    Convert(ConvertArgs),
    /// Variance functions and the operations on them.
    Varfun(VarfunArgs),
    /// Closed-form membership of `1 + a m + b m^2 + c m^3`.
    CheckCubic {
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form membership of `1 + a m^4`.
    CheckQuartic {
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hankel evidence for membership through a finite order.
    Evidence {
        #[command(flatten)]
        v: VarfunInput,
        #[arg(long, value_enum, default_value = "v")]
        target: ClassArg,
        #[command(flatten)]
        common: Common,
    },
    /// Polynomials `P_0..P_order` from a variance function or a recursion.
    Polys {
        #[command(flatten)]
        v: VarfunInput,
        /// Read `--values` as recursion coefficients instead.
        #[arg(long, value_enum)]
        recursion: Option<RecursionKind>,
        /// Also report the Gram matrix against the moments.
        #[arg(long)]
        gram: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Zero pattern of `nu`-`d`-orthogonality.
    DOrth {
        #[command(flatten)]
        v: VarfunInput,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Leading principal minors of a Hankel matrix.
    Hankel {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        shift: usize,
        /// Matrix size; defaults to the largest the sequence allows.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Jacobi coefficients of a moment sequence.
    Jacobi {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduce `M(z) / (N(z) - z x)` to a variance function.
    GfReduce {
        #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
        m: RatList,
        #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
        n: RatList,
        /// Moments of the orthogonalizing measure.
        #[arg(long, value_parser = input::parse_list, allow_hyphen_values = true)]
        moments: RatList,
        /// Number of polynomials `T_n` to report.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The Fuss-number example end to end.
    Demo {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Input(format!("--{flag} is required here")))
}

fn moments_json(m: &MomentSequence) -> Value {
    json!({ "moments": wire::rationals(m.as_slice()), "order": m.order() })
}

fn cumulants_json(k: &FreeCumulants) -> Value {
    json!({ "cumulants": wire::rationals(k.as_slice()), "order": k.order() })
}

fn s_json(s: &STransform) -> Value {
    json!({ "s_series": wire::rationals(s.series().coeffs()), "order": s.order() })
}

fn s_from(values: Vec<Rational>) -> Result<STransform, CliError> {
    Ok(STransform::new(Series::new(values)?)?)
}

fn convert(args: &ConvertArgs) -> Result<Value, CliError> {
    let order = args.common.order;
    Ok(match args.op {
        ConvertOp::ToCumulants => {
            let m = MomentSequence::new(args.input.list()?)?;
            cumulants_json(&transforms::moments_to_free_cumulants(&m))
        }
        ConvertOp::ToMoments => {
            let k = FreeCumulants::new(args.input.list()?);
            moments_json(&transforms::free_cumulants_to_moments(&k))
        }
        ConvertOp::Noncrossing => {
            let k = FreeCumulants::new(args.input.list()?);
            let top = k.order().min(order);
            let mut moments = vec![csk_core::rational::one()];
            for n in 1..=top {
                moments.push(noncrossing::moments_via_noncrossing(&k, n)?);
            }
            json!({ "moments": wire::rationals(&moments), "order": top })
        }
        ConvertOp::ToS => s_json(&transforms::moments_to_s(&MomentSequence::new(
            args.input.list()?,
        )?)?),
        ConvertOp::FromS => moments_json(&transforms::moments_from_s(&s_from(args.input.list()?)?)),
        ConvertOp::Dilate => {
            let m = MomentSequence::new(args.input.list()?)?;
            moments_json(&transforms::dilate(&m, &required(&args.t, "t")?)?)
        }
        ConvertOp::DilateCumulants => {
            let k = FreeCumulants::new(args.input.list()?);
            cumulants_json(&transforms::dilate_cumulants(&k, &required(&args.t, "t")?)?)
        }
        ConvertOp::Translate => {
            let k = FreeCumulants::new(args.input.list()?);
            cumulants_json(&transforms::translate(&k, &required(&args.t, "t")?))
        }
        ConvertOp::Add => {
            let a = FreeCumulants::new(args.input.list()?);
            let b = FreeCumulants::new(required(&args.other, "other")?.0);
            cumulants_json(&transforms::free_additive_convolve(&a, &b)?)
        }
        ConvertOp::Power => {
            let k = FreeCumulants::new(args.input.list()?);
            let power = transforms::free_convolution_power(&k, &required(&args.t, "t")?);
            let mut out = cumulants_json(&power.cumulants);
            out["validity"] = json!(wire::validity(power.validity));
            out
        }
        ConvertOp::Mul => {
            let a = s_from(args.input.list()?)?;
            let b = s_from(required(&args.other, "other")?.0)?;
            moments_json(&transforms::free_multiplicative_convolve(&a, &b))
        }
        ConvertOp::FussCatalan => moments_json(&transforms::fuss_catalan_power(
            &required(&args.b, "b")?,
            &required(&args.p, "p")?,
            order,
        )?),
        ConvertOp::MarchenkoPastur => s_json(&transforms::marchenko_pastur_s(
            &required(&args.lambda, "lambda")?,
            order,
        )?),
    })
}

fn varfun_cmd(args: &VarfunArgs) -> Result<Value, CliError> {
    let order = args.common.order;
    Ok(match args.op {
        VarfunCmd::FromMoments => {
            let m = MomentSequence::new(args.v.input.list()?)?;
            wire::varfun(&varfun::varfun_from_moments(&m)?)
        }
        VarfunCmd::FromCenteredMoments => {
            let m = MomentSequence::new(args.v.input.list()?)?;
            wire::varfun(&varfun::varfun_from_centered_moments(&m)?)
        }
        VarfunCmd::ToMoments => {
            moments_json(&varfun::moments_from_varfun(&args.v.varfun()?, order)?)
        }
        VarfunCmd::Apply => {
            let v = args.v.varfun()?;
            let op = match required(&args.transform, "transform")? {
                Transform::ScaleMean => VarfunOp::ScaleMean(required(&args.param, "param")?),
                Transform::AddLinear => VarfunOp::AddLinear(required(&args.param, "param")?),
                Transform::ScalarCombine => {
                    VarfunOp::ScalarCombine(required(&args.param, "param")?)
                }
                Transform::SumMinusOne => VarfunOp::SumMinusOne,
                Transform::SubSquare => VarfunOp::SubSquare,
                Transform::AddSquare => VarfunOp::AddSquare,
                Transform::Reflect => VarfunOp::Reflect,
            };
            let other = match &args.other {
                Some(list) => Some(to_varfun(list.0.clone(), args.v.truncated)?),
                None => None,
            };
            let second = other
                .as_ref()
                .map(|w| Operand::new(w, args.other_class.into()));
            wire::classified(&varfun::apply_varfun_op(
                &op,
                Operand::new(&v, args.class.into()),
                second,
            )?)
        }
        VarfunCmd::ProductForm => {
            let factors = args.factors.clone().map(|f| f.0).unwrap_or_default();
            let form = varfun::product_form_varfun(
                &required(&args.a, "a")?,
                &required(&args.b, "b")?,
                &required(&args.c, "c")?,
                &factors,
                order,
            )?;
            let mut out = wire::varfun(&form.varfun);
            out["verdict"] = wire::membership(&form.verdict);
            out
        }
        VarfunCmd::FromS => wire::classified(&varfun::varfun_from_s(
            &s_from(args.v.input.list()?)?,
            order,
        )?),
    })
}

fn polys_cmd(
    v: &VarfunInput,
    recursion: Option<RecursionKind>,
    gram: bool,
    order: usize,
) -> Result<Value, CliError> {
    let (fam, vf) = match recursion {
        None => {
            let vf = v.varfun()?;
            (families::polynomials_from_varfun(&vf, order)?, vf)
        }
        Some(kind) => {
            let coeffs = v.input.list()?;
            let spec = match kind {
                RecursionKind::General => RecursionSpec::General(coeffs),
                RecursionKind::Finite => RecursionSpec::Finite(coeffs),
            };
            (
                families::polynomials_from_recursion(&spec, order)?,
                spec.associated_varfun()?,
            )
        }
    };
    let mut out = json!({
        "polys": wire::polynomials(fam.polys()),
        "order": fam.order(),
        "varfun": wire::rationals(vf.series().coeffs()),
        "gf_identity": families::generating_function_identity_check(&fam, &vf, order)?,
    });
    if gram {
        let m = varfun::moments_from_varfun(&vf, 2 * order)?;
        out["gram"] = wire::gram(&families::gram_matrix(&fam, &m)?);
    }
    Ok(out)
}

fn gf_reduce(
    m: &RatList,
    n: &RatList,
    moments: &RatList,
    count: Option<usize>,
) -> Result<Value, CliError> {
    let m_series = Series::new(m.0.clone())?;
    let n_series = Series::new(n.0.clone())?;
    let moments = MomentSequence::new(moments.0.clone())?;
    let red = families::reduce_general_gf(&m_series, &n_series, &moments)?;
    let mut out = json!({
        "t": wire::rational(&red.t),
        "varfun": wire::rationals(red.varfun.series().coeffs()),
        "varfun_order": red.varfun.order(),
    });
    if let Some(count) = count {
        let t_polys = families::polynomials_from_gf(&m_series, &n_series, count)?;
        let p = families::polynomials_from_varfun(&red.varfun, count)?;
        out["t_polys"] = wire::polynomials(&t_polys);
        out["rescaled_match"] = json!(t_polys == families::rescale_family(p.polys(), &red.t));
    }
    Ok(out)
}

fn hankel_cmd(input: &Input, shift: usize, size: Option<usize>) -> Result<Value, CliError> {
    let seq = input.list()?;
    let size = size.unwrap_or_else(|| {
        if seq.len() > shift {
            (seq.len() - shift - 1) / 2 + 1
        } else {
            0
        }
    });
    Ok(wire::hankel(&hankel::hankel_minors(&seq, shift, size)?))
}

fn run(cli: &Cli) -> (Result<Value, CliError>, Format) {
    match &cli.command {
        Command::Convert(args) => (convert(args), args.common.format),
        Command::Varfun(args) => (varfun_cmd(args), args.common.format),
        Command::CheckCubic { a, b, c, format } => {
            let v = membership::cubic_membership(a, b, c);
            let out = json!({
                "in_V": v.v.claim == Claim::InV,
                "in_Vinf": v.v_infinity.claim == Claim::InVInfinity,
                "v": wire::membership(&v.v),
                "v_infinity": wire::membership(&v.v_infinity),
            });
            (Ok(out), *format)
        }
        Command::CheckQuartic { a, format } => {
            let v = membership::quartic_axis_membership(a);
            let mut out = wire::membership(&v);
            out["in_V"] = json!(v.claim == Claim::InV);
            (Ok(out), *format)
        }
        Command::Evidence { v, target, common } => {
            let result = v
                .varfun()
                .and_then(|vf| {
                    Ok(membership::membership_evidence(
                        &vf,
                        common.order,
                        (*target).into(),
                    )?)
                })
                .map(|verdict| wire::membership(&verdict));
            (result, common.format)
        }
        Command::Polys {
            v,
            recursion,
            gram,
            common,
        } => (polys_cmd(v, *recursion, *gram, common.order), common.format),
        Command::DOrth { v, d, common } => {
            let result = v
                .varfun()
                .and_then(|vf| Ok(families::d_orthogonality_check(&vf, *d, common.order)?))
                .map(|r| wire::d_orthogonality(&r));
            (result, common.format)
        }
        Command::Hankel {
            input,
            shift,
            size,
            format,
        } => (hankel_cmd(input, *shift, *size), *format),
        Command::Jacobi { input, format } => {
            let result = input
                .list()
                .and_then(|m| Ok(jacobi::jacobi_from_moments(&MomentSequence::new(m)?)?))
                .map(|j| wire::jacobi(&j));
            (result, *format)
        }
        Command::GfReduce {
            m,
            n,
            moments,
            count,
            format,
        } => (gf_reduce(m, n, moments, *count), *format),
        Command::Demo { common } => (
            demo::run_demo(common.order)
                .map(|r| wire::demo(&r))
                .map_err(Into::into),
            common.format,
        ),
    }
}

fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        ),
        Format::Text => print!("{}", text::render(value)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        (Ok(value), format) => {
            emit(&value, format);
            ExitCode::SUCCESS
        }
        (Err(CliError::Domain(e)), format) => {
            emit(&wire::error(&e), format);
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        (Err(CliError::Input(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
