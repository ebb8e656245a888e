"""Exception types shared across the toolkit."""


class NewsgaugeError(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(NewsgaugeError):
    pass


class FetchFailed(NewsgaugeError):
    def __init__(self, url, detail=""):
        self.url = url
        super().__init__(f"could not fetch {url}" + (f": {detail}" if detail else ""))


class NotHtml(NewsgaugeError):
    def __init__(self, url, content_type):
        self.url = url
        self.content_type = content_type
        super().__init__(f"{url} returned non-HTML content type {content_type!r}")


class SchemaError(NewsgaugeError):
    pass


class InsufficientClass(NewsgaugeError):
    def __init__(self, label, available, requested):
        self.label = label
        self.available = available
        self.requested = requested
        super().__init__(
            f"class {label!r} has {available} records, {requested} requested"
        )


class EmptyDocument(NewsgaugeError):
    pass


class UrlError(NewsgaugeError):
    pass


class InvalidWord(NewsgaugeError):
    pass


class CategoryError(NewsgaugeError):
    pass


class DictionaryRequired(NewsgaugeError):
    pass


class DegenerateText(NewsgaugeError):
    pass


class NotFitted(NewsgaugeError):
    pass


class EmptyCorpus(NewsgaugeError):
    pass


class EmptyVocabulary(NewsgaugeError):
    pass


class DegenerateLabels(NewsgaugeError):
    pass


class TooFewRows(NewsgaugeError):
    pass


class EmptyEvaluation(NewsgaugeError):
    pass
