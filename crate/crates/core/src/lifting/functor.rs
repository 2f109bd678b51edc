use super::LiftError;
use crate::monoidal::EnumerableSmc;

/// A strong monoidal functor between enumerable SMCs.
pub trait SmcFunctor {
    type Source: EnumerableSmc;
    type Target: EnumerableSmc;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;

    /// Whether `x` lies in the domain of definition; `map_obj` may panic otherwise.
    fn defines(&self, _x: &<Self::Source as EnumerableSmc>::Obj) -> bool {
        true
    }

    fn map_obj(&self, x: &<Self::Source as EnumerableSmc>::Obj) -> <Self::Target as EnumerableSmc>::Obj;

    fn map_mor(
        &self,
        f: &<Self::Source as EnumerableSmc>::Mor,
    ) -> Result<<Self::Target as EnumerableSmc>::Mor, LiftError>;

    /// The comparison `F x (x) F y -> F(x (x) y)`; the identity for strict
    /// functors.
    fn comparison(
        &self,
        x: &<Self::Source as EnumerableSmc>::Obj,
        y: &<Self::Source as EnumerableSmc>::Obj,
    ) -> Result<<Self::Target as EnumerableSmc>::Mor, LiftError> {
        let t = self.target();
        let both = t.tensor_obj(&self.map_obj(x), &self.map_obj(y));
        let image = self.map_obj(&self.source().tensor_obj(x, y));
        if both != image {
            return Err(LiftError::NotWellDefined(format!(
                "F x (x) F y = {} but F(x (x) y) = {}",
                t.show_obj(&both),
                t.show_obj(&image)
            )));
        }
        Ok(t.identity(&image))
    }
}

pub struct IdentityFunctor<'a, C> {
    pub smc: &'a C,
}

impl<C: EnumerableSmc> SmcFunctor for IdentityFunctor<'_, C> {
    type Source = C;
    type Target = C;

    fn source(&self) -> &C {
        self.smc
    }

    fn target(&self) -> &C {
        self.smc
    }

    fn map_obj(&self, x: &C::Obj) -> C::Obj {
        x.clone()
    }

    fn map_mor(&self, f: &C::Mor) -> Result<C::Mor, LiftError> {
        Ok(f.clone())
    }
}

/// `second . first`.
pub struct Composite<'a, F, G> {
    pub first: &'a F,
    pub second: &'a G,
}

impl<F, G> SmcFunctor for Composite<'_, F, G>
where
    F: SmcFunctor,
    G: SmcFunctor<Source = F::Target>,
{
    type Source = F::Source;
    type Target = G::Target;

    fn source(&self) -> &F::Source {
        self.first.source()
    }

    fn target(&self) -> &G::Target {
        self.second.target()
    }

    fn defines(&self, x: &<F::Source as EnumerableSmc>::Obj) -> bool {
        self.first.defines(x) && self.second.defines(&self.first.map_obj(x))
    }

    fn map_obj(&self, x: &<F::Source as EnumerableSmc>::Obj) -> <G::Target as EnumerableSmc>::Obj {
        self.second.map_obj(&self.first.map_obj(x))
    }

    fn map_mor(&self, f: &<F::Source as EnumerableSmc>::Mor) -> Result<<G::Target as EnumerableSmc>::Mor, LiftError> {
        self.second.map_mor(&self.first.map_mor(f)?)
    }

    fn comparison(
        &self,
        x: &<F::Source as EnumerableSmc>::Obj,
        y: &<F::Source as EnumerableSmc>::Obj,
    ) -> Result<<G::Target as EnumerableSmc>::Mor, LiftError> {
        let inner = self.second.map_mor(&self.first.comparison(x, y)?)?;
        let outer = self.second.comparison(&self.first.map_obj(x), &self.first.map_obj(y))?;
        Ok(self.target().compose(&inner, &outer))
    }
}
