from texsynth.common import unparse_shapes
from .generator import GeneratorAbstract


class _Report(GeneratorAbstract):

    def __init__(self, template_path, **context):
        super(_Report, self).__init__(template_path)
        self.context = context

    @property
    def template(self):
        """
        @return:    Parsed template
        @rtype:     str
        """
        if self._template is None:
            self._template = self.tpl.render(**self.context)

        return self._template


class ParameterSummary(_Report):

    def __init__(self, params, path=None):
        """
        Summary of a parameter set's header and tensor sizes
        @type   params: texsynth.featurebank.ParameterSet
        @param  path:   File the parameters were read from or written to
        @type   path:   str or None
        """
        layers = [{'index': l, 'shape': layer.shape, 'filters': layer.num_filters, 'gram': h.shape}
                  for l, (layer, h) in enumerate(zip(params.bank, params))]
        super(ParameterSummary, self).__init__('parameters.tpl', params=params, path=path, layers=layers,
                                               shapes=unparse_shapes(params.bank.shapes))


class GradcheckReport(_Report):

    def __init__(self, results, seed):
        """
        @type   results:    list of texsynth.gradcheck.CheckResult
        @type   seed:       int
        """
        super(GradcheckReport, self).__init__('gradcheck.tpl', results=results, seed=seed,
                                              passed=all(r.passed for r in results))


class ScoreReport(_Report):

    def __init__(self, losses, shapes, candidate=None):
        """
        @param  losses:     Per-layer relative distances
        @type   losses:     list of float
        @param  shapes:     Filter shape of every layer
        @type   shapes:     list of tuple
        @type   candidate:  str or None
        """
        super(ScoreReport, self).__init__('score.tpl', losses=list(zip(shapes, losses)), total=sum(losses),
                                          candidate=candidate)
