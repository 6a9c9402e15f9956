"""应用级异常，可映射到 HTTP 状态码与 CLI 退出码。"""


class ApiError(Exception):
    """API 业务异常，由 gateway 错误中间件捕获并转为对应 HTTP 响应；CLI 据 exit_code 退出。"""

    exit_code: int = 2

    def __init__(self, message: str, status_code: int = 400, error_code: str = "API_ERROR"):
        super().__init__(message)
        self.status_code = status_code
        self.error_code = error_code


class InvalidInputError(ApiError):
    """输入不合法：维度不一致、负坐标、族参数越界等。"""

    exit_code = 2

    def __init__(self, message: str, error_code: str = "INVALID_INPUT"):
        super().__init__(message, status_code=400, error_code=error_code)


class ResourceCapError(ApiError):
    """超出可配置的搜索/枚举上限。"""

    exit_code = 3

    def __init__(self, message: str, error_code: str = "RESOURCE_CAP"):
        super().__init__(message, status_code=413, error_code=error_code)


class CertificateError(ApiError):
    """粘合证书或粘合树复核失败。"""

    exit_code = 1

    def __init__(self, message: str, error_code: str = "INVALID_CERTIFICATE"):
        super().__init__(message, status_code=422, error_code=error_code)
